#pragma once

#include "fracq/catalog.hpp"
#include "fracq/config.hpp"
#include "fracq/errors.hpp"
#include "fracq/forgetting.hpp"
#include "fracq/harness.hpp"
#include "fracq/learner.hpp"
#include "fracq/q_table.hpp"
#include "fracq/random.hpp"
#include "fracq/recency.hpp"
#include "fracq/selection.hpp"
#include "fracq/session_log.hpp"
#include "fracq/session_service.hpp"
#include "fracq/simulator.hpp"
#include "fracq/state_estimation.hpp"
#include "fracq/stats.hpp"
