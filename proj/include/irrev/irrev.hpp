#pragma once

#include "irrev/error.hpp"
#include "irrev/grid.hpp"
#include "irrev/state.hpp"
#include "irrev/linop.hpp"
#include "irrev/hardy.hpp"
#include "irrev/evolution.hpp"
#include "irrev/lyapunov.hpp"
#include "irrev/lambda.hpp"
#include "irrev/ordering.hpp"
#include "irrev/states.hpp"
#include "irrev/version.hpp"
