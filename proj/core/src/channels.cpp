#include "qcorr/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qcorr/error.hpp"

namespace qcorr {
namespace {

void check_gamma(double gamma, const char* who) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    std::ostringstream os;
    os << who << ": gamma " << gamma << " outside [0,1]";
    throw DomainError(os.str());
  }
}

Complex omega_pow(int k) {
  return std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0);
}

// P|j> = |j+1 mod 3>.
ComplexMatrix cyclic_up() {
  ComplexMatrix p = ComplexMatrix::Zero(3, 3);
  for (int j = 0; j < 3; ++j) p((j + 1) % 3, j) = 1.0;
  return p;
}

}  // namespace

std::string_view to_string(ChannelFamily family) {
  switch (family) {
    case ChannelFamily::Dephasing: return "dephasing";
    case ChannelFamily::TritFlip: return "trit-flip";
    case ChannelFamily::TritPhaseFlip: return "trit-phase-flip";
    case ChannelFamily::Depolarizing: return "depolarizing";
    case ChannelFamily::Custom: return "custom";
  }
  return "unknown";
}

std::optional<ChannelFamily> parse_channel_family(std::string_view name) {
  for (auto f : kNoiseFamilies) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators, ChannelFamily family,
                           double gamma)
    : operators_(std::move(operators)), family_(family), gamma_(gamma), dim_(0) {
  if (operators_.empty()) throw DimensionError("KrausChannel: empty operator list");
  dim_ = int(operators_.front().rows());
  for (const auto& op : operators_) {
    if (op.rows() != dim_ || op.cols() != dim_ || dim_ < 1) {
      throw DimensionError("KrausChannel: operators must be square and of equal size");
    }
  }
}

KrausChannel KrausChannel::identity(int d) {
  return KrausChannel({ComplexMatrix::Identity(d, d)}, ChannelFamily::Custom, 0.0);
}

ComplexMatrix KrausChannel::apply(const ComplexMatrix& m) const {
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (const auto& e : operators_) out.noalias() += e * m * e.adjoint();
  return out;
}

KrausDiagnostics validate_kraus(const KrausChannel& channel) {
  const int d = channel.dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : channel.operators()) sum.noalias() += e.adjoint() * e;
  const ComplexMatrix dev = sum - ComplexMatrix::Identity(d, d);
  KrausDiagnostics out;
  out.max_deviation = dev.cwiseAbs().maxCoeff();
  out.passed = out.max_deviation <= kCompletenessTolerance;
  out.diagonal_deviation.resize(std::size_t(d));
  for (int k = 0; k < d; ++k) out.diagonal_deviation[std::size_t(k)] = dev(k, k).real();
  return out;
}

double gamma_of(DecayParams p) {
  if (!(p.rate >= 0.0) || !(p.time >= 0.0)) {
    throw DomainError("gamma_of: decay rate and time must be non-negative");
  }
  if (p.rate == 0.0 || p.time == 0.0) return 0.0;
  return std::clamp(-std::expm1(-p.rate * p.time), 0.0, 1.0);
}

KrausChannel dephasing_kraus(double gamma, int d) {
  check_gamma(gamma, "dephasing_kraus");
  if (d < 2) throw DimensionError("dephasing_kraus: dimension must be >= 2");
  std::vector<ComplexMatrix> ops;
  ComplexMatrix m = ComplexMatrix::Identity(d, d) * std::sqrt(1.0 - gamma);
  m(0, 0) = 1.0;
  ops.push_back(std::move(m));
  for (int k = 1; k < d; ++k) {
    ComplexMatrix proj = ComplexMatrix::Zero(d, d);
    proj(k, k) = std::sqrt(gamma);
    ops.push_back(std::move(proj));
  }
  return KrausChannel(std::move(ops), ChannelFamily::Dephasing, gamma);
}

KrausChannel trit_flip_kraus(double gamma, TritFlipNormalization norm) {
  check_gamma(gamma, "trit_flip_kraus");
  const ComplexMatrix p = cyclic_up();
  const double flip = norm == TritFlipNormalization::Repaired ? std::sqrt(gamma / 3.0)
                                                              : std::sqrt(gamma);
  std::vector<ComplexMatrix> ops;
  ops.push_back(ComplexMatrix::Identity(3, 3) * std::sqrt(1.0 - 2.0 * gamma / 3.0));
  ops.push_back(flip * p);
  ops.push_back(flip * (p * p));
  return KrausChannel(std::move(ops), ChannelFamily::TritFlip, gamma);
}

KrausChannel trit_phase_flip_kraus(double gamma) {
  check_gamma(gamma, "trit_phase_flip_kraus");
  const double w = std::sqrt(gamma / 6.0);
  std::vector<ComplexMatrix> ops;
  ops.push_back(ComplexMatrix::Identity(3, 3) * std::sqrt(1.0 - 2.0 * gamma / 3.0));
  for (int sign : {+1, -1}) {
    // N(+-) = [[0,0,w^{+-1}],[1,0,0],[0,w^{-+1},0]]
    ComplexMatrix n = ComplexMatrix::Zero(3, 3);
    n(0, 2) = omega_pow(sign);
    n(1, 0) = 1.0;
    n(2, 1) = omega_pow(-sign);
    ops.push_back(w * n);
  }
  for (int sign : {+1, -1}) {
    // T(+-) = [[0,w^{-+1},0],[0,0,w^{+-1}],[1,0,0]]
    ComplexMatrix t = ComplexMatrix::Zero(3, 3);
    t(0, 1) = omega_pow(-sign);
    t(1, 2) = omega_pow(sign);
    t(2, 0) = 1.0;
    ops.push_back(w * t);
  }
  return KrausChannel(std::move(ops), ChannelFamily::TritPhaseFlip, gamma);
}

ComplexMatrix qutrit_shift() {
  ComplexMatrix y = ComplexMatrix::Zero(3, 3);
  y(0, 1) = 1.0;
  y(1, 2) = 1.0;
  y(2, 0) = 1.0;
  return y;
}

ComplexMatrix qutrit_clock() {
  ComplexMatrix z = ComplexMatrix::Zero(3, 3);
  for (int j = 0; j < 3; ++j) z(j, j) = omega_pow(j);
  return z;
}

KrausChannel depolarizing_kraus(double gamma) {
  check_gamma(gamma, "depolarizing_kraus");
  const double alpha = std::sqrt(1.0 - 8.0 * gamma / 9.0);
  const double beta = std::sqrt(gamma) / 3.0;
  const ComplexMatrix y = qutrit_shift();
  const ComplexMatrix z = qutrit_clock();
  std::vector<ComplexMatrix> ops;
  ops.push_back(alpha * ComplexMatrix::Identity(3, 3));
  ComplexMatrix ya = ComplexMatrix::Identity(3, 3);
  for (int a = 0; a < 3; ++a) {
    ComplexMatrix weyl = ya;
    for (int b = 0; b < 3; ++b) {
      if (a != 0 || b != 0) ops.push_back(beta * weyl);
      weyl = weyl * z;
    }
    ya = ya * y;
  }
  return KrausChannel(std::move(ops), ChannelFamily::Depolarizing, gamma);
}

KrausChannel make_channel(ChannelFamily family, double gamma, int d) {
  if (family != ChannelFamily::Dephasing && family != ChannelFamily::Custom && d != 3) {
    throw DimensionError(std::string(to_string(family)) + " channel is defined for qutrits only");
  }
  switch (family) {
    case ChannelFamily::Dephasing: return dephasing_kraus(gamma, d);
    case ChannelFamily::TritFlip: return trit_flip_kraus(gamma);
    case ChannelFamily::TritPhaseFlip: return trit_phase_flip_kraus(gamma);
    case ChannelFamily::Depolarizing: return depolarizing_kraus(gamma);
    case ChannelFamily::Custom: break;
  }
  throw DomainError("make_channel: custom channels must be built from explicit operators");
}

ComplexMatrix apply_local_channels_unchecked(const ComplexMatrix& rho, Dims dims,
                                             const KrausChannel& channel_a,
                                             const KrausChannel& channel_b) {
  const ComplexMatrix id_a = ComplexMatrix::Identity(dims.a, dims.a);
  const ComplexMatrix id_b = ComplexMatrix::Identity(dims.b, dims.b);
  ComplexMatrix after_a = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& e : channel_a.operators()) {
    const ComplexMatrix op = tensor(e, id_b);
    after_a.noalias() += op * rho * op.adjoint();
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& f : channel_b.operators()) {
    const ComplexMatrix op = tensor(id_a, f);
    out.noalias() += op * after_a * op.adjoint();
  }
  return out;
}

DensityMatrix apply_local_channels(const DensityMatrix& rho, const KrausChannel& channel_a,
                                   const KrausChannel& channel_b) {
  const Dims dims = rho.dims();
  if (channel_a.dim() != dims.a || channel_b.dim() != dims.b) {
    throw DimensionError("apply_local_channels: channel dimension does not match subsystem");
  }
  for (const auto* ch : {&channel_a, &channel_b}) {
    const auto diag = validate_kraus(*ch);
    if (!diag.passed) {
      std::ostringstream os;
      os << "apply_local_channels: " << to_string(ch->family())
         << " Kraus set is not trace preserving (max deviation " << diag.max_deviation << ")";
      throw ValidationError(os.str(), diag.max_deviation);
    }
  }
  ComplexMatrix out = apply_local_channels_unchecked(rho.matrix(), dims, channel_a, channel_b);
  // Remove the rounding-level anti-Hermitian part accumulated by the products.
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix::from_matrix(std::move(out), dims);
}

DensityMatrix evolve(const DensityMatrix& rho0, ChannelFamily family_a, ChannelFamily family_b,
                     double rate_a, double rate_b, double time) {
  const double gamma_a = gamma_of({rate_a, time});
  const double gamma_b = gamma_of({rate_b, time});
  return apply_local_channels(rho0, make_channel(family_a, gamma_a, rho0.dims().a),
                              make_channel(family_b, gamma_b, rho0.dims().b));
}

}  // namespace qcorr
