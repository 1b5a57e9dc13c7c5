#pragma once

#include "pinch4/errors.hpp"
#include "pinch4/curvature.hpp"
#include "pinch4/polytopes.hpp"
#include "pinch4/quadforms.hpp"
#include "pinch4/qp_face.hpp"
#include "pinch4/ricci_bound.hpp"
#include "pinch4/geography.hpp"
#include "pinch4/oracle.hpp"
#include "pinch4/expr.hpp"
#include "pinch4/io.hpp"
#include "pinch4/tables.hpp"
#include "pinch4/cli.hpp"
