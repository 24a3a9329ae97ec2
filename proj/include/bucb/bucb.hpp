#pragma once

#include "bucb/bandit_core.hpp"
#include "bucb/concrete_process.hpp"
#include "bucb/csv.hpp"
#include "bucb/errors.hpp"
#include "bucb/invariant_engine.hpp"
#include "bucb/mc_harness.hpp"
#include "bucb/rng.hpp"
#include "bucb/svg_plot.hpp"
#include "bucb/sweep.hpp"
#include "bucb/ucb_policy.hpp"
