#pragma once

#include <initializer_list>

#include "gpcone/types.hpp"

namespace tutil {

inline gpcone::Vector vec(std::initializer_list<double> vals) {
  gpcone::Vector out(static_cast<gpcone::Index>(vals.size()));
  gpcone::Index i = 0;
  for (double v : vals) out(i++) = v;
  return out;
}

inline gpcone::SplitPoint pt(const gpcone::ConeParams& p,
                             std::initializer_list<double> vals) {
  return gpcone::SplitPoint::from_full(p, vec(vals));
}

inline gpcone::ConeParams cone(gpcone::Index m, std::initializer_list<double> alpha) {
  return gpcone::ConeParams(m, vec(alpha));
}

}  // namespace tutil
