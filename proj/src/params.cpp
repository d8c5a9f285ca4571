#include "sglab/params.hpp"

#include <cmath>
#include <sstream>

namespace sglab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::TailNotConverged: return "TailNotConverged";
    case ErrorCode::PoleError: return "PoleError";
    case ErrorCode::DenominatorZero: return "DenominatorZero";
    case ErrorCode::Divergence: return "DivergenceError";
    case ErrorCode::CflViolation: return "CflViolation";
    case ErrorCode::LinearSolve: return "LinearSolveError";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::GridNotConverged: return "GridNotConverged";
    case ErrorCode::Io: return "IoError";
  }
  return "Unknown";
}

void validate_for_solver(const ModelParams& p) {
  auto finite = [](double v) { return std::isfinite(v); };
  require(finite(p.ell) && p.ell > 0, ErrorCode::InvalidArgument,
          "ell must be a finite positive length");
  require(finite(p.horizon) && p.horizon > 0, ErrorCode::InvalidArgument,
          "horizon T must be finite and positive");
  require(finite(p.alpha) && p.alpha > 0, ErrorCode::InvalidArgument,
          "alpha must be finite and positive");
  require(finite(p.eps) && p.eps >= 0, ErrorCode::InvalidArgument,
          "eps must be finite and non-negative");
  require(finite(p.gamma_bias), ErrorCode::InvalidArgument,
          "gamma must be finite");
}

void validate_for_estimates(const ModelParams& p) {
  validate_for_solver(p);
  if (!(p.alpha > 0 && p.alpha < 1)) {
    std::ostringstream os;
    os << "hypothesis 0<alpha<1 violated (alpha=" << p.alpha << ")";
    fail(ErrorCode::InvalidArgument, os.str());
  }
  if (!(p.eps > 0 && p.eps < 1)) {
    std::ostringstream os;
    os << "hypothesis 0<eps<1 violated (eps=" << p.eps << ")";
    fail(ErrorCode::InvalidArgument, os.str());
  }
}

void validate(const TruncationPolicy& policy) {
  require(policy.max_modes >= 1, ErrorCode::InvalidArgument,
          "max_modes must be at least 1");
  require(std::isfinite(policy.tail_tol) && policy.tail_tol > 0,
          ErrorCode::InvalidArgument, "tail_tol must be positive");
}

}  // namespace sglab
