#include "pressure_lab/errors.hpp"
#include "pressure_lab/pressure.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

namespace pressure_lab {

SftModel::SftModel(Eigen::MatrixXi transitions, Eigen::MatrixXd phi)
    : transitions_(std::move(transitions)), phi_(std::move(phi)) {
  const auto n = transitions_.rows();
  if (n < 1 || transitions_.cols() != n) throw InvalidArgument("transition matrix must be square");
  if (phi_.rows() != n || phi_.cols() != n) throw InvalidArgument("potential table size mismatch");
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const int b = transitions_(i, j);
      if (b != 0 && b != 1) throw InvalidArgument("transition matrix must be 0/1");
      if (!std::isfinite(phi_(i, j))) throw InvalidArgument("potential must be finite");
    }
    if (transitions_.row(i).sum() == 0) throw InvalidArgument("symbol with no successor");
    if (transitions_.col(i).sum() == 0) throw InvalidArgument("symbol with no predecessor");
  }
}

SftModel SftModel::with_symbol_potential(const Eigen::MatrixXi& transitions,
                                         const Eigen::VectorXd& phi) {
  if (phi.size() != transitions.rows()) throw InvalidArgument("potential table size mismatch");
  Eigen::MatrixXd table(transitions.rows(), transitions.cols());
  for (Eigen::Index i = 0; i < table.rows(); ++i) table.row(i).setConstant(phi(i));
  return SftModel(transitions, table);
}

SftModel SftModel::with_edge_potential(const Eigen::MatrixXi& transitions,
                                       const Eigen::MatrixXd& phi) {
  return SftModel(transitions, phi);
}

SftModel SftModel::full_shift(int symbols) {
  if (symbols < 1) throw InvalidArgument("alphabet must be non-empty");
  return SftModel(Eigen::MatrixXi::Ones(symbols, symbols), Eigen::MatrixXd::Zero(symbols, symbols));
}

SftModel SftModel::golden_mean() {
  Eigen::MatrixXi b(2, 2);
  b << 1, 1, 1, 0;
  return SftModel(b, Eigen::MatrixXd::Zero(2, 2));
}

SftModel SftModel::with_zero_potential() const {
  return SftModel(transitions_, Eigen::MatrixXd::Zero(phi_.rows(), phi_.cols()));
}

Eigen::MatrixXd SftModel::weighted_matrix() const {
  return transitions_.cast<double>().cwiseProduct(phi_.array().exp().matrix());
}

bool SftModel::irreducible() const {
  const auto n = static_cast<std::size_t>(transitions_.rows());
  // Reachability closure (Warshall).
  std::vector<char> reach(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      reach[i * n + j] = transitions_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k * n + j]) reach[i * n + j] = 1;
      }
    }
  }
  for (char r : reach) {
    if (!r) return false;
  }
  return true;
}

namespace {

Eigen::VectorXd perron_vector(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  const auto& vals = es.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < vals.size(); ++i) {
    if (std::abs(vals(i)) > std::abs(vals(best))) best = i;
  }
  Eigen::VectorXd v = es.eigenvectors().col(best).real().cwiseAbs();
  const double s = v.sum();
  if (s > 0.0) v /= s;
  return v;
}

}  // namespace

SftSpectrum sft_spectrum(const SftModel& model) {
  const Eigen::MatrixXd m = model.weighted_matrix();
  SftSpectrum out;
  if (m.rows() == 1) {
    out.spectral_radius = std::abs(m(0, 0));
    out.right = out.left = Eigen::VectorXd::Ones(1);
    return out;
  }
  const Eigen::VectorXcd vals = m.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    out.spectral_radius = std::max(out.spectral_radius, std::abs(vals(i)));
  }
  out.right = perron_vector(m);
  out.left = perron_vector(m.transpose());
  return out;
}

PressureEstimate sft_pressure(const SftModel& model) {
  const SftSpectrum spec = sft_spectrum(model);
  PressureEstimate e;
  e.method = Method::sft;
  e.bound_kind = BoundKind::two_sided;
  e.value = std::log(spec.spectral_radius);
  e.parameters["alphabet"] = model.alphabet();
  e.parameters["spectral_radius"] = spec.spectral_radius;
  if (!model.irreducible()) e.flags.push_back("reducible");
  return e;
}

double sft_entropy(const SftModel& model) { return sft_pressure(model.with_zero_potential()).value; }

}  // namespace pressure_lab
