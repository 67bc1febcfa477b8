#include "bphz/gaussian.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bphz/rng.hpp"
#include "bphz/symbol_text.hpp"

namespace bphz {

int GaussianMonomial::degree() const {
  int n = 0;
  for (const auto& [v, c] : counts_) n += c;
  return n;
}

std::vector<GaussianVar> GaussianMonomial::expanded() const {
  std::vector<GaussianVar> out;
  for (const auto& [v, c] : counts_) out.insert(out.end(), static_cast<std::size_t>(c), v);
  return out;
}

CovarianceSpec::CovarianceSpec(int d) : d_(d) {
  if (d < 1) throw ConfigError("covariance dimension d must be at least 1");
  c_.assign(dim() * dim(), Rational(0));
}

std::size_t CovarianceSpec::index(const GaussianVar& v) const {
  if (v.index < 1 || v.index > d_) throw DomainError("variable " + v.name() + " out of range for d = " + std::to_string(d_));
  return static_cast<std::size_t>(v.kind == GaussianVar::Kind::D ? v.index - 1 : d_ + v.index - 1);
}

void CovarianceSpec::set(const GaussianVar& u, const GaussianVar& v, const Rational& value) {
  c_[index(u) * dim() + index(v)] = value;
  c_[index(v) * dim() + index(u)] = value;
}

CovarianceSpec CovarianceSpec::parse(const std::string& text) {
  std::vector<std::vector<Rational>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<Rational> row;
    std::string item;
    while (ls >> item) row.push_back(parse_rational(item));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  if (n == 0 || n % 2 != 0) throw ConfigError("covariance matrix must have an even, nonzero number of rows");
  for (std::size_t r = 0; r < n; ++r)
    if (rows[r].size() != n)
      throw ConfigError("covariance row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                        " entries, expected " + std::to_string(n));
  CovarianceSpec cov(static_cast<int>(n / 2));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (rows[r][c] != rows[c][r])
        throw ConfigError("covariance matrix is not symmetric at (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")");
      cov.c_[r * n + c] = rows[r][c];
    }
  return cov;
}

CovarianceSpec CovarianceSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open covariance file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string CovarianceSpec::to_text() const {
  std::string out;
  for (std::size_t r = 0; r < dim(); ++r) {
    for (std::size_t c = 0; c < dim(); ++c) {
      if (c) out += ' ';
      out += to_string(c_[r * dim() + c]);
    }
    out += '\n';
  }
  return out;
}

CovarianceSpec CovarianceSpec::random_symmetric(int d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  CovarianceSpec cov(d);
  const std::size_t n = cov.dim();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) {
      const int top = num(rng);
      Rational q(top, den(rng));
      q.canonicalize();
      cov.c_[r * n + c] = q;
      cov.c_[c * n + r] = q;
    }
  return cov;
}

CovarianceSpec CovarianceSpec::random_psd(int d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> entry(-3, 3);
  CovarianceSpec cov(d);
  const std::size_t n = cov.dim();
  std::vector<int> a(n * n);
  for (auto& x : a) x = entry(rng);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      long s = 0;
      for (std::size_t k = 0; k < n; ++k) s += a[r * n + k] * a[c * n + k];
      cov.c_[r * n + c] = Rational(s, static_cast<long>(n));
      cov.c_[r * n + c].canonicalize();
    }
  return cov;
}

CovarianceSpec exact_covariance(const NumericCovariance& cov) {
  CovarianceSpec out(cov.d);
  for (int a = 0; a < 2 * cov.d; ++a)
    for (int b = a; b < 2 * cov.d; ++b) {
      GaussianVar u = a < cov.d ? GaussianVar::d(a + 1) : GaussianVar::x(a - cov.d + 1);
      GaussianVar v = b < cov.d ? GaussianVar::d(b + 1) : GaussianVar::x(b - cov.d + 1);
      out.set(u, v, from_double(cov(u, v)));
    }
  return out;
}

std::string SymbolicCovariance::symbol(const GaussianVar& u, const GaussianVar& v) {
  const auto& [a, b] = u < v ? std::pair{u, v} : std::pair{v, u};
  return "c(" + a.name() + "," + b.name() + ")";
}

Polynomial SymbolicCovariance::operator()(const GaussianVar& u, const GaussianVar& v) const {
  return Polynomial::variable(symbol(u, v));
}

std::optional<GaussianMonomial> origin_monomial(const TypedTree& t) {
  auto shape = elementary_shape(t);
  if (!shape) throw DomainError("'" + format_tree(t) + "' has no value at the origin");
  if (shape->bare_integrations > 0) return std::nullopt;
  GaussianMonomial m;
  for (const auto& [i, c] : shape->xi) m.multiply(GaussianVar::d(i), c);
  for (const auto& [j, c] : shape->chain) m.multiply(GaussianVar::x(j), c);
  return m;
}

MonteCarloEstimate mc_moment_oracle(const GaussianMonomial& m, const CovarianceSpec& cov, std::uint64_t n_samples,
                                    std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(cov.dim());
  Eigen::MatrixXd c(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index k = 0; k < n; ++k) {
      GaussianVar u = r < cov.d() ? GaussianVar::d(static_cast<int>(r) + 1) : GaussianVar::x(static_cast<int>(r) - cov.d() + 1);
      GaussianVar v = k < cov.d() ? GaussianVar::d(static_cast<int>(k) + 1) : GaussianVar::x(static_cast<int>(k) - cov.d() + 1);
      c(r, k) = cov(u, v).get_d();
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
  if (eig.info() != Eigen::Success) throw DomainError("covariance factorization failed");
  const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  if (eig.eigenvalues().minCoeff() < -1e-10 * scale) throw DomainError("covariance matrix is not positive semidefinite");
  const Eigen::MatrixXd factor =
      eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();

  std::vector<Eigen::Index> slots;
  for (const auto& v : m.expanded()) slots.push_back(static_cast<Eigen::Index>(cov.index(v)));

  constexpr std::uint64_t kChunks = 64;
  std::vector<double> sum(kChunks, 0.0), sum_sq(kChunks, 0.0);
  const auto chunks = static_cast<long long>(kChunks);
#pragma omp parallel for schedule(dynamic)
  for (long long chunk = 0; chunk < chunks; ++chunk) {
    const std::uint64_t begin = n_samples * static_cast<std::uint64_t>(chunk) / kChunks;
    const std::uint64_t end = n_samples * static_cast<std::uint64_t>(chunk + 1) / kChunks;
    auto rng = stream_engine(seed, static_cast<std::uint64_t>(chunk));
    std::normal_distribution<double> normal;
    Eigen::VectorXd z(n), x(n);
    double s = 0.0, s2 = 0.0;
    for (std::uint64_t k = begin; k < end; ++k) {
      for (Eigen::Index r = 0; r < n; ++r) z(r) = normal(rng);
      x.noalias() = factor * z;
      double value = 1.0;
      for (auto slot : slots) value *= x(slot);
      s += value;
      s2 += value * value;
    }
    sum[static_cast<std::size_t>(chunk)] = s;
    sum_sq[static_cast<std::size_t>(chunk)] = s2;
  }
  double s = 0.0, s2 = 0.0;
  for (std::uint64_t k = 0; k < kChunks; ++k) {
    s += sum[k];
    s2 += sum_sq[k];
  }
  const double count = static_cast<double>(n_samples);
  MonteCarloEstimate out;
  out.estimate = s / count;
  const double var = std::max(0.0, (s2 / count - out.estimate * out.estimate) * count / std::max(1.0, count - 1.0));
  out.std_error = std::sqrt(var / count);
  return out;
}

}  // namespace bphz
