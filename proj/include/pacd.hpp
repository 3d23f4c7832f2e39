#pragma once

#include "pacd/attachment.hpp"
#include "pacd/branching.hpp"
#include "pacd/calibration.hpp"
#include "pacd/components.hpp"
#include "pacd/continuation.hpp"
#include "pacd/descriptive.hpp"
#include "pacd/detection.hpp"
#include "pacd/encoding.hpp"
#include "pacd/experiments.hpp"
#include "pacd/graph.hpp"
#include "pacd/graph_io.hpp"
#include "pacd/grow.hpp"
#include "pacd/history_oracle.hpp"
#include "pacd/likelihood.hpp"
#include "pacd/parallel.hpp"
#include "pacd/rational.hpp"
#include "pacd/report_json.hpp"
#include "pacd/rng.hpp"
#include "pacd/schedule.hpp"
#include "pacd/verification.hpp"
