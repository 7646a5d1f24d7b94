#pragma once
// Shared scalar types, report structure and error taxonomy.

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rllf {

using cplx = std::complex<double>;

// A single failed sample inside a check run.
struct Failure {
  std::string where;  // sample / component / rule description
  double residual = 0.0;
};

// Machine-readable outcome of one verification run. pass holds iff
// max_residual <= tolerance (enforced by finalize()).
struct CheckReport {
  std::string check;
  bool pass = false;
  double max_residual = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::map<std::string, cplx> params;
  std::vector<Failure> failures;

  void record(const std::string& where, double residual, double tol) {
    if (residual > max_residual) max_residual = residual;
    if (!(residual <= tol)) failures.push_back({where, residual});
  }
  CheckReport& finalize() {
    pass = max_residual <= tolerance && failures.empty();
    return *this;
  }
};

struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularBlockError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingParameterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Rewrite engine exceeded its step budget; carries the offending word.
struct NonTerminationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An e/f symbol became adjacent to an inverted K symbol: the move relation
// for that pair is delta-function singular and outside the numeric catalog.
struct DeltaSectorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two spectral tags (after quanta shifts) collide within the separation guard.
struct TagCollisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mixed-sign expansion called with tags violating the |u|<|v| discipline.
struct TagShiftError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config validation failure; pointer is a JSON pointer into the config.
struct ValidationError : std::runtime_error {
  std::string pointer;
  ValidationError(std::string ptr, const std::string& msg)
      : std::runtime_error(msg + " at " + ptr), pointer(std::move(ptr)) {}
};

}  // namespace rllf
