#pragma once

#include "xlie/model.hpp"

namespace xlie::test {

/// Built once per test binary and shared by every suite.
inline const AlgebraModel& model(AlgebraKind kind) {
  static const AlgebraModel g2 = build_model(AlgebraKind::G2);
  static const AlgebraModel f4 = build_model(AlgebraKind::F4);
  static const AlgebraModel e6 = build_model(AlgebraKind::E6);
  switch (kind) {
    case AlgebraKind::G2: return g2;
    case AlgebraKind::F4: return f4;
    default: return e6;
  }
}

}  // namespace xlie::test
