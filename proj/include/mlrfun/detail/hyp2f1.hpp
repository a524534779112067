#ifndef MLRFUN_DETAIL_HYP2F1_HPP
#define MLRFUN_DETAIL_HYP2F1_HPP

#include "mlrfun/dd.hpp"

// Gauss 2F1 evaluated in double-double, including the z -> 1 connection
// formulas. Only what the critical weight evaluator needs: real parameters,
// 0 <= z < 1, w = 1 - z supplied directly so callers can pass w far below
// double's representable gap from 1.

namespace mlr::detail {

/// 2F1(a,b;c;z) by the defining series; requires convergence (z bounded away
/// from 1 in practice). Plain dd summation.
dd hyp2f1_series(const dd& a, const dd& b, const dd& c, const dd& z);

/// 2F1(a,b;c;1-w), 0 < w <= ~0.3, through the connection formulas:
/// two-series form when c-a-b is not an integer, digamma/log forms when
/// c-a-b is an integer (Euler transform first when it is negative).
dd hyp2f1_near_unit(const dd& a, const dd& b, const dd& c, const dd& w);

}  // namespace mlr::detail

#endif
