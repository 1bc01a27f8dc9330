#pragma once

#include "tfvs/approx.hpp"
#include "tfvs/config.hpp"
#include "tfvs/exact.hpp"
#include "tfvs/generators.hpp"
#include "tfvs/harness.hpp"
#include "tfvs/io.hpp"
#include "tfvs/local_ratio.hpp"
#include "tfvs/reduce.hpp"
#include "tfvs/rng.hpp"
#include "tfvs/tournament.hpp"
#include "tfvs/vertex_set.hpp"
