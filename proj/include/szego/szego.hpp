#pragma once

// Zeros of scaled partial sums of entire functions: limit curves, arc and
// corner scaling limits, and the Laplace-method machinery behind them.

#include "szego/constants.hpp"
#include "szego/curve.hpp"
#include "szego/erfc.hpp"
#include "szego/errors.hpp"
#include "szego/family.hpp"
#include "szego/gamma.hpp"
#include "szego/growth.hpp"
#include "szego/harness.hpp"
#include "szego/io.hpp"
#include "szego/laplace.hpp"
#include "szego/predict.hpp"
#include "szego/quadrature.hpp"
#include "szego/rootfind.hpp"
#include "szego/scaled_complex.hpp"
#include "szego/verify.hpp"
