#pragma once

// The parameter system of the main inequality, as given by the user
// (literal texts) and as derived at a working precision.

#include <optional>
#include <string>

#include "primecert/numerics.hpp"

namespace primecert {

// A positive real given either as a rational literal ("4e18", "1.5e20") or
// as e^N ("e59", "e43.5").
struct X0Literal {
  std::string text;
  std::optional<BigRational> value;     // set for rational literals
  std::optional<BigRational> exponent;  // set for e^N literals

  static X0Literal parse(std::string_view text);
  Interval enclose(Precision p) const;
  Interval log_enclose(Precision p) const;
};

struct CertInputs {
  X0Literal x0;
  int m = 0;
  BigRational delta;
  BigRational a;
  BigRational T1;
  BigRational sigma0;
};

struct CertParams {
  CertInputs inputs;
  BigRational u;  // delta / m
  Interval x0;
  Interval log_x0;
  Interval X0;      // x0 e^{-u} / (1 + delta (1 - a))
  Interval log_X0;
  Interval Delta;   // (1 - (1 + delta a)/(1 + delta (1 - a)) e^{-u})^{-1}

  int m() const noexcept { return inputs.m; }
  const BigRational& delta() const noexcept { return inputs.delta; }
  const BigRational& a() const noexcept { return inputs.a; }
  const BigRational& T1() const noexcept { return inputs.T1; }
  const BigRational& sigma0() const noexcept { return inputs.sigma0; }
  Precision precision() const noexcept { return X0.precision(); }
};

}  // namespace primecert
