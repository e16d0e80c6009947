#include "sl3k/oracle.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "sl3k/action.hpp"
#include "sl3k/clebsch.hpp"

namespace sl3k {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::complex<double> kI{0.0, 1.0};

void require_step(double h) {
  if (!(h >= 1e-6 && h <= 1e-3)) throw std::invalid_argument("finite-difference step must be in [1e-6, 1e-3]");
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

EulerAngles random_angles(std::mt19937_64& rng) {
  return {uniform(rng, 0, 2 * kPi), std::acos(uniform(rng, -1, 1)), uniform(rng, 0, 2 * kPi)};
}

nlohmann::json complex_json(std::complex<double> z) { return nlohmann::json::array({z.real(), z.imag()}); }

std::vector<WignerIndex> indices_up_to(int lmax) {
  std::vector<WignerIndex> out;
  for (int l = 0; l <= lmax; ++l) {
    for (int m1 = -l; m1 <= l; ++m1) {
      for (int m2 = -l; m2 <= l; ++m2) out.push_back({l, m1, m2});
    }
  }
  return out;
}

// Position of D^l_{m1,m2} in indices_up_to.
std::size_t index_position(const WignerIndex& i) {
  std::size_t before = 0;
  for (int l = 0; l < i.l; ++l) before += static_cast<std::size_t>((2 * l + 1) * (2 * l + 1));
  return before + static_cast<std::size_t>((i.m1 + i.l) * (2 * i.l + 1) + (i.m2 + i.l));
}

// Values of every D with l <= lmax at every node, one row per index.
Eigen::MatrixXcd wigner_table(int lmax, const std::vector<QuadratureRule::Node>& nodes) {
  const auto idx = indices_up_to(lmax);
  Eigen::MatrixXcd table(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t c = 0; c < nodes.size(); ++c) {
    for (int l = 0; l <= lmax; ++l) {
      const Eigen::MatrixXcd d = wigner_D_matrix(l, nodes[c].angles);
      for (int m1 = -l; m1 <= l; ++m1) {
        for (int m2 = -l; m2 <= l; ++m2) {
          table(static_cast<Eigen::Index>(index_position({l, m1, m2})), static_cast<Eigen::Index>(c)) =
              d(m1 + l, m2 + l);
        }
      }
    }
  }
  return table;
}

template <class Matrix, class ComplexMatrix, class F, class G>
std::complex<double> central_difference(const F& f, const ComplexMatrix& x, const G& g, double h) {
  auto along = [&](const Matrix& y) -> std::complex<double> {
    if (y.isZero(0.0)) return 0.0;
    const Matrix forward = (h * y).exp();
    const Matrix backward = (-h * y).exp();
    return (f(g * forward) - f(g * backward)) / (2 * h);
  };
  return along(x.real()) + kI * along(x.imag());
}

}  // namespace

// ---- quadrature -----------------------------------------------------------------

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    jacobi(i, i - 1) = b;
    jacobi(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  nodes.resize(static_cast<std::size_t>(n));
  weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    const double v = solver.eigenvectors()(0, i);
    weights[static_cast<std::size_t>(i)] = 2.0 * v * v;
  }
}

QuadratureRule QuadratureRule::for_degree(int degree) {
  if (degree < 0) throw std::invalid_argument("quadrature degree must be non-negative");
  QuadratureRule r;
  r.degree = degree;
  gauss_legendre(degree / 2 + 1, r.cos_beta, r.beta_weights);
  for (double& w : r.beta_weights) w /= 2.0;
  r.alpha_nodes = degree + 1;
  r.gamma_nodes = degree + 1;
  return r;
}

std::vector<QuadratureRule::Node> QuadratureRule::nodes() const {
  std::vector<Node> out;
  out.reserve(cos_beta.size() * static_cast<std::size_t>(alpha_nodes * gamma_nodes));
  const double angular = 1.0 / (alpha_nodes * gamma_nodes);
  for (std::size_t b = 0; b < cos_beta.size(); ++b) {
    const double beta = std::acos(cos_beta[b]);
    for (int a = 0; a < alpha_nodes; ++a) {
      for (int c = 0; c < gamma_nodes; ++c) {
        out.push_back({{2 * kPi * a / alpha_nodes, beta, 2 * kPi * c / gamma_nodes},
                       beta_weights[b] * angular});
      }
    }
  }
  return out;
}

std::complex<double> integrate_K(const KFunction& f, const QuadratureRule& rule) {
  std::complex<double> sum = 0.0;
  for (const auto& node : rule.nodes()) sum += node.weight * f(node.angles);
  return sum;
}

// ---- derivatives ----------------------------------------------------------------

std::complex<double> fd_lie_derivative(const GFunction& f, const Eigen::Matrix3cd& x,
                                       const Eigen::Matrix3d& g, double h) {
  require_step(h);
  return central_difference<Eigen::Matrix3d>(f, x, g, h);
}

GFunction extended_wigner_function(const LambdaValue& lambda, const WignerIndex& idx) {
  return [lambda, idx](const Eigen::Matrix3d& g) { return extend_wigner(lambda, idx, GroupElement(g)); };
}

std::complex<double> fd_lie_derivative(const LambdaValue& lambda, const WignerIndex& idx,
                                       const Eigen::Matrix3cd& x, const Eigen::Matrix3d& g, double h) {
  return fd_lie_derivative(extended_wigner_function(lambda, idx), x, g, h);
}

Eigen::Matrix3d random_group_point(std::mt19937_64& rng) {
  Eigen::Matrix3d n = Eigen::Matrix3d::Identity();
  n(0, 1) = uniform(rng, -1, 1);
  n(0, 2) = uniform(rng, -1, 1);
  n(1, 2) = uniform(rng, -1, 1);
  const double a = uniform(rng, 0.5, 2.0);
  const double b = uniform(rng, 0.5, 2.0);
  const Eigen::Vector3d diag(a, b, 1.0 / (a * b));
  return n * diag.asDiagonal() * matrix_from_euler(random_angles(rng));
}

// ---- theorem check --------------------------------------------------------------

nlohmann::json TheoremMainReport::to_json() const {
  return {{"lambda", {complex_json(lambda[0]), complex_json(lambda[1]), complex_json(lambda[2])}},
          {"lmax", lmax},
          {"samples", samples},
          {"seed", seed},
          {"h", h},
          {"comparisons", comparisons},
          {"max_deviation", max_deviation},
          {"worst", {{"n", worst_n}, {"l", worst_index.l}, {"m1", worst_index.m1}, {"m2", worst_index.m2}}}};
}

TheoremMainReport verify_theorem_main(const LambdaValue& lambda, int lmax, int samples,
                                      std::uint64_t seed, double h) {
  require_zero_sum(lambda);
  if (samples < 1) throw std::invalid_argument("verify_theorem_main: samples must be positive");
  require_step(h);
  TheoremMainReport r;
  r.lambda = lambda;
  r.lmax = lmax;
  r.samples = samples;
  r.seed = seed;
  r.h = h;
  std::mt19937_64 rng(seed);
  std::vector<GroupElement> points;
  for (int s = 0; s < samples; ++s) points.emplace_back(random_group_point(rng));
  for (int n = -2; n <= 2; ++n) {
    const Eigen::Matrix3cd x = generator_matrix(z_generator(n));
    for (const auto& idx : indices_up_to(lmax)) {
      const auto expansion = evaluate(act_Z(n, idx), lambda);
      for (const auto& g : points) {
        const auto lhs = fd_lie_derivative(lambda, idx, x, g.matrix(), h);
        const auto rhs = extend_wigner(lambda, expansion, g);
        const double dev = std::abs(lhs - rhs);
        ++r.comparisons;
        if (dev > r.max_deviation) {
          r.max_deviation = dev;
          r.worst_index = idx;
          r.worst_n = n;
        }
      }
    }
  }
  return r;
}

// ---- coordinates ----------------------------------------------------------------

Eigen::Matrix3d coordinate_matrix(const CoordinatePoint& p) {
  if (p.y1 <= 0 || p.y2 <= 0) throw std::invalid_argument("coordinates y1, y2 must be positive");
  Eigen::Matrix3d n = Eigen::Matrix3d::Identity();
  n(0, 1) = p.x1;
  n(0, 2) = p.x3;
  n(1, 2) = p.x2;
  const Eigen::Vector3d diag(std::cbrt(p.y1 * p.y1 * p.y2), std::cbrt(p.y2 / p.y1),
                             1.0 / std::cbrt(p.y1 * p.y2 * p.y2));
  return n * diag.asDiagonal();
}

CoordinatePoint random_coordinate_point(std::mt19937_64& rng) {
  CoordinatePoint p;
  p.x1 = uniform(rng, -1, 1);
  p.x2 = uniform(rng, -1, 1);
  p.x3 = uniform(rng, -1, 1);
  p.y1 = uniform(rng, 0.5, 2.0);
  p.y2 = uniform(rng, 0.5, 2.0);
  return p;
}

nlohmann::json DiffopsReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& row : rows) {
    rows_json.push_back({{"generator", row.generator},
                         {"lie_derivative", complex_json(row.lie_derivative)},
                         {"coordinate_operator", complex_json(row.coordinate_operator)},
                         {"deviation", row.deviation}});
  }
  return {{"rows", rows_json}, {"max_deviation", max_deviation}};
}

DiffopsReport coordinate_diffops_check(const LambdaValue& lambda, const WignerIndex& idx,
                                       const CoordinatePoint& point, const Eigen::Matrix3d& left,
                                       double h) {
  require_step(h);
  const GFunction f = [lambda, idx, left](const Eigen::Matrix3d& g) {
    return extend_wigner(lambda, idx, GroupElement(left * g));
  };
  auto value_at = [&](const CoordinatePoint& p) { return f(coordinate_matrix(p)); };
  const std::complex<double> value = value_at(point);
  auto d_x = [&](double CoordinatePoint::*field) {
    CoordinatePoint plus = point, minus = point;
    plus.*field += h;
    minus.*field -= h;
    return (value_at(plus) - value_at(minus)) / (2 * h);
  };
  // y d/dy as a derivative in log y.
  auto y_d_y = [&](double CoordinatePoint::*field) {
    CoordinatePoint plus = point, minus = point;
    plus.*field *= std::exp(h);
    minus.*field *= std::exp(-h);
    return (value_at(plus) - value_at(minus)) / (2 * h);
  };
  const auto dx1 = d_x(&CoordinatePoint::x1);
  const auto dx2 = d_x(&CoordinatePoint::x2);
  const auto dx3 = d_x(&CoordinatePoint::x3);
  const auto y1d = y_d_y(&CoordinatePoint::y1);
  const auto y2d = y_d_y(&CoordinatePoint::y2);
  const double m2 = idx.m2;
  const double y1 = point.y1, y2 = point.y2;

  const std::vector<std::pair<Generator, std::complex<double>>> table = {
      {Generator::Y1, kI * m2 * value},
      {Generator::H1, 2.0 * y1d - y2d},
      {Generator::H2, -y1d + 2.0 * y2d},
      {Generator::X1, y1 * dx1},
      {Generator::X2, y2 * dx2 + point.x1 * y2 * dx3},
      {Generator::X3, y1 * y2 * dx3},
      {Generator::Zm2, -m2 * value + 2.0 * kI * y1 * dx1 + 2.0 * y1d - y2d},
      {Generator::Z0, std::sqrt(6.0) * y2d},
      {Generator::Z2, m2 * value - 2.0 * kI * y1 * dx1 + 2.0 * y1d - y2d},
  };
  DiffopsReport report;
  const Eigen::Matrix3d g = coordinate_matrix(point);
  for (const auto& [gen, coordinate] : table) {
    DiffopRow row;
    row.generator = generator_name(gen);
    row.lie_derivative = fd_lie_derivative(f, generator_matrix(gen), g, h);
    row.coordinate_operator = coordinate;
    row.deviation = std::abs(row.lie_derivative - coordinate);
    report.max_deviation = std::max(report.max_deviation, row.deviation);
    report.rows.push_back(row);
  }
  return report;
}

// ---- SL(2) ----------------------------------------------------------------------

Eigen::Matrix2d sl2_matrix(const SL2Point& p) {
  if (p.y <= 0) throw std::invalid_argument("sl2 coordinate y must be positive");
  Eigen::Matrix2d n, a, k;
  n << 1, p.x, 0, 1;
  a << std::sqrt(p.y), 0, 0, 1 / std::sqrt(p.y);
  k << std::cos(p.theta), -std::sin(p.theta), std::sin(p.theta), std::cos(p.theta);
  return n * a * k;
}

std::complex<double> sl2_vector_value(std::complex<double> nu, int l, const Eigen::Matrix2d& g) {
  // Bottom row of n a k_theta is y^{-1/2} (sin theta, cos theta).
  const double c = g(1, 0), d = g(1, 1);
  const double r2 = c * c + d * d;
  if (r2 < 1e-20) throw std::invalid_argument("sl2_vector_value: singular matrix");
  const double y = 1.0 / r2;
  const double theta = std::atan2(c, d);
  return std::exp((nu + 0.5) * std::log(y) + kI * static_cast<double>(l) * theta);
}

std::complex<double> sl2_fd_lie_derivative(const SL2Function& f, const Eigen::Matrix2cd& x,
                                           const Eigen::Matrix2d& g, double h) {
  require_step(h);
  return central_difference<Eigen::Matrix2d>(f, x, g, h);
}

nlohmann::json SL2OracleReport::to_json() const {
  return {{"comparisons", comparisons}, {"max_deviation", max_deviation}};
}

namespace {

Eigen::Matrix2cd sl2_raise_matrix() {
  Eigen::Matrix2cd m;
  m << 1.0, -kI, -kI, -1.0;
  return m;
}

Eigen::Matrix2cd sl2_lower_matrix() {
  Eigen::Matrix2cd m;
  m << 1.0, kI, kI, -1.0;
  return m;
}

SL2Point random_sl2_point(std::mt19937_64& rng) {
  return {uniform(rng, -1, 1), uniform(rng, 0.5, 2.0), uniform(rng, 0, 2 * kPi)};
}

}  // namespace

SL2OracleReport sl2_ladder_oracle(std::complex<double> nu, int lmax, int samples, std::uint64_t seed,
                                  double h) {
  SL2OracleReport r;
  std::mt19937_64 rng(seed);
  Eigen::Matrix2cd weight;
  weight << 0.0, -1.0, 1.0, 0.0;
  for (int s = 0; s < samples; ++s) {
    const Eigen::Matrix2d g = sl2_matrix(random_sl2_point(rng));
    for (int l = -lmax; l <= lmax; ++l) {
      const SL2Function v = [nu, l](const Eigen::Matrix2d& m) { return sl2_vector_value(nu, l, m); };
      const std::complex<double> ld = static_cast<double>(l);
      const std::complex<double> expected[3] = {
          (2.0 * nu + 1.0 + ld) * sl2_vector_value(nu, l + 2, g),
          (2.0 * nu + 1.0 - ld) * sl2_vector_value(nu, l - 2, g),
          kI * ld * sl2_vector_value(nu, l, g)};
      const Eigen::Matrix2cd gens[3] = {sl2_raise_matrix(), sl2_lower_matrix(), weight};
      for (int i = 0; i < 3; ++i) {
        const double dev = std::abs(sl2_fd_lie_derivative(v, gens[i], g, h) - expected[i]);
        r.max_deviation = std::max(r.max_deviation, dev);
        ++r.comparisons;
      }
    }
  }
  return r;
}

SL2OracleReport sl2_maass_check(std::complex<double> nu, int lmax, int samples, std::uint64_t seed,
                                double h) {
  SL2OracleReport r;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Eigen::Matrix2d left = sl2_matrix(random_sl2_point(rng));
    const SL2Point p{uniform(rng, -1, 1), uniform(rng, 0.5, 2.0), 0.0};
    for (int l = -lmax; l <= lmax; ++l) {
      const SL2Function f = [nu, l, left](const Eigen::Matrix2d& m) {
        return sl2_vector_value(nu, l, left * m);
      };
      auto at = [&](double x, double y) { return f(sl2_matrix({x, y, 0.0})); };
      const auto value = at(p.x, p.y);
      const auto dx = (at(p.x + h, p.y) - at(p.x - h, p.y)) / (2 * h);
      const auto y_dy = (at(p.x, p.y * std::exp(h)) - at(p.x, p.y * std::exp(-h))) / (2 * h);
      const double ld = l;
      const auto raise = -2.0 * kI * p.y * dx + 2.0 * y_dy + ld * value;
      const auto lower = 2.0 * kI * p.y * dx + 2.0 * y_dy - ld * value;
      const Eigen::Matrix2d g = sl2_matrix(p);
      r.max_deviation = std::max(r.max_deviation,
                                 std::abs(sl2_fd_lie_derivative(f, sl2_raise_matrix(), g, h) - raise));
      r.max_deviation = std::max(r.max_deviation,
                                 std::abs(sl2_fd_lie_derivative(f, sl2_lower_matrix(), g, h) - lower));
      r.comparisons += 2;
    }
  }
  return r;
}

// ---- suites ---------------------------------------------------------------------

nlohmann::json SuiteResult::to_json() const {
  return {{"suite", suite},         {"passed", passed},   {"max_deviation", max_deviation},
          {"tolerance", tolerance}, {"seconds", seconds}, {"details", details}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"orthogonality", "cg", "theorem-main", "diffops", "sl2"};
  return names;
}

namespace {

SuiteResult orthogonality_suite(int lmax) {
  SuiteResult r;
  r.tolerance = 1e-9;
  const auto rule = QuadratureRule::for_degree(2 * lmax);
  const auto nodes = rule.nodes();
  const Eigen::MatrixXcd table = wigner_table(lmax, nodes);
  Eigen::VectorXd w(static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) w(static_cast<Eigen::Index>(i)) = nodes[i].weight;
  const Eigen::MatrixXcd gram = table * w.asDiagonal() * table.adjoint();
  const auto idx = indices_up_to(lmax);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = 0; b < idx.size(); ++b) {
      const double expected = a == b ? 1.0 / (2 * idx[a].l + 1) : 0.0;
      r.max_deviation = std::max(r.max_deviation,
                                 std::abs(gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) - expected));
    }
  }
  r.details = {{"pairs", idx.size() * idx.size()}, {"nodes", nodes.size()}};
  return r;
}

SuiteResult cg_suite(int lmax, std::uint64_t seed) {
  SuiteResult r;
  r.tolerance = 1e-9;
  const auto rule = QuadratureRule::for_degree(2 * lmax + 4);
  const auto nodes = rule.nodes();
  const Eigen::MatrixXcd table = wigner_table(lmax + 2, nodes);
  Eigen::VectorXd w(static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) w(static_cast<Eigen::Index>(i)) = nodes[i].weight;
  auto row = [&](const WignerIndex& i) { return table.row(static_cast<Eigen::Index>(index_position(i))); };
  double quad = 0.0;
  int integrals = 0;
  for (const auto& idx : indices_up_to(lmax)) {
    for (int a = -2; a <= 2; ++a) {
      for (int b = -2; b <= 2; ++b) {
        const Eigen::RowVectorXcd product = row({2, a, b}).cwiseProduct(row(idx)).cwiseProduct(w.transpose());
        for (int j = -2; j <= 2; ++j) {
          const WignerIndex target{idx.l + j, idx.m1 + a, idx.m2 + b};
          if (!target.valid()) continue;
          const std::complex<double> integral = (product.array() * row(target).array().conjugate()).sum();
          const double expected = q(a, j, idx.l, idx.m1).to_double() * q(b, j, idx.l, idx.m2).to_double() /
                                  (2 * target.l + 1);
          quad = std::max(quad, std::abs(integral - expected));
          ++integrals;
        }
      }
    }
  }
  // Pointwise products at random rotations.
  std::mt19937_64 rng(seed);
  double pointwise = 0.0;
  for (int s = 0; s < 50; ++s) {
    const EulerAngles k = random_angles(rng);
    for (const auto& idx : indices_up_to(lmax)) {
      for (int a = -2; a <= 2; ++a) {
        for (int b = -2; b <= 2; ++b) {
          const auto lhs = wigner_D({2, a, b}, k) * wigner_D(idx, k);
          std::complex<double> rhs = 0.0;
          for (const auto& [t, c] : cg_product({2, a, b}, idx)) rhs += c.to_double() * wigner_D(t, k);
          pointwise = std::max(pointwise, std::abs(lhs - rhs));
        }
      }
    }
  }
  r.max_deviation = std::max(quad, pointwise);
  r.details = {{"integrals", integrals}, {"quadrature_max_deviation", quad},
               {"pointwise_max_deviation", pointwise}, {"pointwise_samples", 50}};
  return r;
}

LambdaValue random_lambda(std::mt19937_64& rng) {
  const std::complex<double> a(uniform(rng, -1, 1), uniform(rng, -1, 1));
  const std::complex<double> b(uniform(rng, -1, 1), uniform(rng, -1, 1));
  return {a, b, -a - b};
}

SuiteResult theorem_main_suite(int lmax, std::uint64_t seed) {
  SuiteResult r;
  r.tolerance = 1e-6;
  std::mt19937_64 rng(seed);
  r.details = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) {
    const LambdaValue lambda = random_lambda(rng);
    const auto report = verify_theorem_main(lambda, lmax, 10, rng());
    r.max_deviation = std::max(r.max_deviation, report.max_deviation);
    r.details.push_back(report.to_json());
  }
  return r;
}

SuiteResult diffops_suite(int lmax, std::uint64_t seed) {
  SuiteResult r;
  r.tolerance = 1e-5;
  std::mt19937_64 rng(seed);
  std::map<std::string, double> per_row;
  for (int s = 0; s < 10; ++s) {
    const LambdaValue lambda = random_lambda(rng);
    const int l = std::uniform_int_distribution<int>(0, lmax)(rng);
    std::uniform_int_distribution<int> m(-l, l);
    const WignerIndex idx{l, m(rng), m(rng)};
    const Eigen::Matrix3d left = random_group_point(rng);
    const auto report = coordinate_diffops_check(lambda, idx, random_coordinate_point(rng), left);
    for (const auto& row : report.rows) per_row[row.generator] = std::max(per_row[row.generator], row.deviation);
    r.max_deviation = std::max(r.max_deviation, report.max_deviation);
  }
  const auto maass = sl2_maass_check({uniform(rng, -1, 1), uniform(rng, -1, 1)}, lmax, 10, rng());
  r.max_deviation = std::max(r.max_deviation, maass.max_deviation);
  r.details = {{"rows", per_row}, {"sl2_maass", maass.to_json()}, {"points", 10}};
  return r;
}

SuiteResult sl2_suite(int lmax, std::uint64_t seed) {
  SuiteResult r;
  r.tolerance = 1e-8;
  std::mt19937_64 rng(seed);
  r.details = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) {
    const std::complex<double> nu(uniform(rng, -1, 1), uniform(rng, -1, 1));
    const auto report = sl2_ladder_oracle(nu, lmax, 10, rng());
    r.max_deviation = std::max(r.max_deviation, report.max_deviation);
    auto j = report.to_json();
    j["nu"] = complex_json(nu);
    r.details.push_back(j);
  }
  return r;
}

}  // namespace

SuiteResult run_suite(const std::string& name, int lmax, std::uint64_t seed) {
  if (lmax < 0) throw std::invalid_argument("lmax must be non-negative");
  const auto start = std::chrono::steady_clock::now();
  SuiteResult r;
  if (name == "orthogonality") {
    r = orthogonality_suite(lmax);
  } else if (name == "cg") {
    r = cg_suite(lmax, seed);
  } else if (name == "theorem-main") {
    r = theorem_main_suite(lmax, seed);
  } else if (name == "diffops") {
    r = diffops_suite(lmax, seed);
  } else if (name == "sl2") {
    r = sl2_suite(lmax, seed);
  } else {
    throw std::invalid_argument("unknown suite: " + name);
  }
  r.suite = name;
  r.passed = r.max_deviation <= r.tolerance;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace sl3k
