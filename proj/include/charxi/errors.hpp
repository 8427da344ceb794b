#pragma once

#include <stdexcept>
#include <string>

namespace charxi {

// Argument lies on a pole or outside the function's domain.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller violated a documented precondition (e.g. imprimitive character).
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Moduli with no primitive non-principal character (q = 1, 2) or q < 3.
class unsupported_modulus_error : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

// Quadrature could not reach its tolerance inside the allowed budget.
class quadrature_budget_error : public std::runtime_error {
 public:
  quadrature_budget_error(const std::string& what, double achieved, double t_max)
      : std::runtime_error(what), achieved_(achieved), t_max_(t_max) {}
  double achieved() const noexcept { return achieved_; }
  double t_max() const noexcept { return t_max_; }

 private:
  double achieved_;
  double t_max_;
};

// Series tail model disagrees with itself beyond the reported error.
class truncation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Zero scan could not isolate or refine a sign change.
class scan_resolution_error : public std::runtime_error {
 public:
  scan_resolution_error(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

// A numerically checked internal invariant failed.
class consistency_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace charxi
