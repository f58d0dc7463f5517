#pragma once

namespace flatlab {

enum class ModeKind { kExact, kFloat };

// Arithmetic backend selector. kExact computes with big rationals and admits
// zero-error identity checks; kFloat is double precision, with `tol` the
// comparison tolerance downstream consumers should use.
struct ArithmeticMode {
  ModeKind kind = ModeKind::kFloat;
  double tol = 1e-12;

  static ArithmeticMode exact() { return {ModeKind::kExact, 0.0}; }
  static ArithmeticMode floating(double tol = 1e-12) {
    return {ModeKind::kFloat, tol};
  }
};

inline const char* mode_name(ModeKind kind) {
  return kind == ModeKind::kExact ? "exact" : "float";
}

}  // namespace flatlab
