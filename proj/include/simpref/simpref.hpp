#pragma once

#include "simpref/bounds.hpp"
#include "simpref/composite.hpp"
#include "simpref/coth_bounds.hpp"
#include "simpref/error.hpp"
#include "simpref/expr.hpp"
#include "simpref/extremal.hpp"
#include "simpref/interval.hpp"
#include "simpref/jet.hpp"
#include "simpref/parallel.hpp"
#include "simpref/ranges.hpp"
#include "simpref/simpson.hpp"
#include "simpref/verify.hpp"
