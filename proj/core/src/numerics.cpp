#include "qbm/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <thread>

namespace qbm {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Rybicki's sampling series for the Dawson function. With h = 0.2 the
// truncation error is below e^{-(pi/2h)^2} ~ 2e-27; the series is cut when
// the Gaussian factor underflows the target accuracy.
double dawson_rybicki(double x) {
  const double h = 0.2;
  const double ax = std::abs(x);
  const int n0 = 2 * static_cast<int>(0.5 * ax / h) + 1;  // nearest odd index
  double sum = 0.0;
  for (int k = 0; k <= 180; ++k) {
    bool live = false;
    const int npos = n0 + 2 * k;
    double dp = ax - npos * h;
    if (dp * dp < 745.0) {
      sum += std::exp(-dp * dp) / npos;
      live = true;
    }
    if (k > 0) {
      const int nneg = n0 - 2 * k;
      double dm = ax - nneg * h;
      if (dm * dm < 745.0) {
        sum += std::exp(-dm * dm) / nneg;
        live = true;
      }
    }
    if (!live && k > 0) break;
  }
  double d = sum / kSqrtPi;
  return x < 0.0 ? -d : d;
}

// Maclaurin series of D(x), rapid for small arguments.
double dawson_series(double x) {
  double term = x;
  double sum = x;
  const double x2 = x * x;
  for (int k = 1; k < 60; ++k) {
    term *= -2.0 * x2 / (2.0 * k + 1.0);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double dawson(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("dawson: non-finite argument");
  if (std::abs(x) < 0.5) return dawson_series(x);
  if (std::abs(x) > 100.0) {
    // Asymptotic 1/(2x) (1 + 1/(2x^2) + 3/(4x^4) + ...), already at machine
    // precision for |x| > 100.
    const double ix2 = 1.0 / (x * x);
    return (0.5 / x) * (1.0 + 0.5 * ix2 * (1.0 + 1.5 * ix2 * (1.0 + 2.5 * ix2)));
  }
  return dawson_rybicki(x);
}

double erfi_scaled(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("erfi_scaled: non-finite argument");
  return 2.0 / kSqrtPi * dawson(x);
}

double erfi(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("erfi: non-finite argument");
  if (std::abs(x) <= 3.0) {
    // Maclaurin series (2/sqrt(pi)) sum x^{2k+1} / (k! (2k+1)).
    double term = x;
    double sum = x;
    const double x2 = x * x;
    for (int k = 1; k < 80; ++k) {
      term *= x2 / k;
      sum += term / (2.0 * k + 1.0);
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return 2.0 / kSqrtPi * sum;
  }
  return std::exp(x * x) * erfi_scaled(x);
}

void QuadratureSpec::validate() const {
  if (!(abs_tolerance > 0.0)) throw std::invalid_argument("QuadratureSpec: abs_tolerance must be positive");
  if (!(cutoff_multiple > 0.0)) throw std::invalid_argument("QuadratureSpec: cutoff_multiple must be positive");
  if (nodes_per_period < 4) throw std::invalid_argument("QuadratureSpec: nodes_per_period too small");
  if (max_panels < 16) throw std::invalid_argument("QuadratureSpec: max_panels too small");
}

namespace {

constexpr int kGlOrder = 16;

struct GlRule {
  std::array<double, kGlOrder> x{};
  std::array<double, kGlOrder> w{};
};

// Gauss-Legendre nodes by Newton iteration on the Legendre recurrence.
GlRule make_gl_rule() {
  GlRule rule;
  const int n = kGlOrder;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  return rule;
}

const GlRule& gl_rule() {
  static const GlRule rule = make_gl_rule();
  return rule;
}

}  // namespace

std::span<const double> gauss_legendre_nodes() {
  return {gl_rule().x.data(), kGlOrder};
}
std::span<const double> gauss_legendre_weights() {
  return {gl_rule().w.data(), kGlOrder};
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 32) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

std::vector<double> cumulative_integral(std::span<const double> f, double h) {
  if (f.size() < 3) throw std::invalid_argument("cumulative_integral: need at least 3 samples");
  std::vector<double> out(f.size(), 0.0);
  // First step from the quadratic through f0, f1, f2.
  out[1] = h * (5.0 * f[0] + 8.0 * f[1] - f[2]) / 12.0;
  for (std::size_t i = 2; i < f.size(); ++i)
    out[i] = out[i - 1] + h * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i]) / 12.0;
  return out;
}

namespace {

struct Panel {
  double a, b, value;
};

double gl_panel(const std::function<double(double)>& g, double a, double b) {
  const auto& rule = gl_rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < kGlOrder; ++i) acc += rule.w[i] * g(mid + half * rule.x[i]);
  return acc * half;
}

}  // namespace

double integrate_omega(const std::function<double(double)>& f, TrigWeight weight,
                       double t, double omega_upper, const QuadratureSpec& spec) {
  spec.validate();
  if (!(omega_upper > 0.0)) throw std::invalid_argument("integrate_omega: omega_upper must be positive");
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("integrate_omega: t must be finite and >= 0");

  std::function<double(double)> g;
  switch (weight) {
    case TrigWeight::none:
      g = f;
      break;
    case TrigWeight::cosine:
      g = [&f, t](double w) { return f(w) * std::cos(w * t); };
      break;
    case TrigWeight::sine:
      g = [&f, t](double w) { return f(w) * std::sin(w * t); };
      break;
  }

  // Initial panels: enough to resolve both the smooth structure and the
  // oscillation (nodes_per_period points per period at this t).
  int n0 = 8;
  if (weight != TrigWeight::none && t > 0.0) {
    const double periods = omega_upper * t / (2.0 * std::numbers::pi);
    n0 = std::max(n0, static_cast<int>(std::ceil(periods * spec.nodes_per_period / kGlOrder)));
  }
  if (n0 > spec.max_panels) {
    throw convergence_error("integrate_omega: oscillation density exceeds panel budget", -1.0);
  }

  std::vector<Panel> stack;
  stack.reserve(64);
  std::vector<double> accepted;
  double leftover_error = 0.0;
  int used_panels = n0;
  const double width0 = omega_upper / n0;

  // Depth-first, left-to-right: push initial panels in reverse so they pop
  // in ascending order; accepted contributions keep a deterministic order.
  for (int i = n0 - 1; i >= 0; --i) {
    const double a = i * width0;
    const double b = (i + 1) * width0;
    stack.push_back({a, b, gl_panel(g, a, b)});
  }

  const double min_width = omega_upper * 1e-12;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.a + p.b);
    const double left = gl_panel(g, p.a, mid);
    const double right = gl_panel(g, mid, p.b);
    const double refined = left + right;
    const double err = std::abs(refined - p.value);
    const double budget = spec.abs_tolerance * (p.b - p.a) / omega_upper;
    if (err <= budget || (p.b - p.a) <= min_width) {
      accepted.push_back(refined);
      if (err > budget) leftover_error += err;
      continue;
    }
    used_panels += 2;
    if (used_panels > spec.max_panels) {
      throw convergence_error("integrate_omega: tolerance not reached within panel budget", err);
    }
    stack.push_back({mid, p.b, right});
    stack.push_back({p.a, mid, left});
  }
  if (leftover_error > spec.abs_tolerance) {
    throw convergence_error("integrate_omega: residual panel error above tolerance", leftover_error);
  }
  return pairwise_sum(accepted);
}

SymmetricQuadraticForm::SymmetricQuadraticForm(int dimension) {
  if (dimension < 1 || dimension > max_dimension)
    throw std::invalid_argument("SymmetricQuadraticForm: dimension out of range");
  matrix = Eigen::MatrixXcd::Zero(dimension, dimension);
  linear = Eigen::VectorXcd::Zero(dimension);
}

void SymmetricQuadraticForm::set_matrix(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("SymmetricQuadraticForm: matrix not square");
  if (m.rows() < 1 || m.rows() > max_dimension)
    throw std::invalid_argument("SymmetricQuadraticForm: dimension out of range");
  matrix = 0.5 * (m + m.transpose());
}

GaussianReducer::GaussianReducer(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("GaussianReducer: matrix not square");
  n_ = static_cast<int>(m.rows());
  if (n_ < 1 || n_ > SymmetricQuadraticForm::max_dimension)
    throw std::invalid_argument("GaussianReducer: dimension out of range");
  if (!m.isApprox(m.transpose(), 1e-12))
    throw std::invalid_argument("GaussianReducer: matrix not symmetric");

  const Eigen::MatrixXd re = m.real();
  const Eigen::MatrixXd im = m.imag();
  Eigen::LLT<Eigen::MatrixXd> llt(re);
  if (llt.info() != Eigen::Success) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(re, Eigen::EigenvaluesOnly);
    throw std::domain_error(
        "gaussian_reduce: divergent integral, Re(M) not positive definite "
        "(smallest eigenvalue " + std::to_string(es.eigenvalues()(0)) + ")");
  }
  lower_ = llt.matrixL();

  double log_det_re = 0.0;
  for (int i = 0; i < n_; ++i) log_det_re += 2.0 * std::log(lower_(i, i));

  has_imag_ = im.cwiseAbs().maxCoeff() > 0.0;
  Complex log_det(log_det_re, 0.0);
  if (has_imag_) {
    const Eigen::MatrixXd c = lower_.triangularView<Eigen::Lower>().solve(
        Eigen::MatrixXd(lower_.triangularView<Eigen::Lower>()
                            .solve(im)
                            .transpose()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (c + c.transpose()));
    eigvals_ = es.eigenvalues();
    eigvecs_ = es.eigenvectors();
    for (int i = 0; i < n_; ++i) log_det += std::log(Complex(1.0, eigvals_(i)));
  }
  log_norm_ = 0.5 * n_ * std::log(2.0 * std::numbers::pi) - 0.5 * log_det;
}

Eigen::VectorXcd GaussianReducer::solve(const Eigen::VectorXcd& rhs) const {
  if (rhs.size() != n_) throw std::invalid_argument("GaussianReducer::solve: size mismatch");
  auto tri_solve_lower = [this](Eigen::VectorXcd v) {
    Eigen::VectorXd re = lower_.triangularView<Eigen::Lower>().solve(Eigen::VectorXd(v.real()));
    Eigen::VectorXd im = lower_.triangularView<Eigen::Lower>().solve(Eigen::VectorXd(v.imag()));
    return Eigen::VectorXcd(re + Complex(0.0, 1.0) * im);
  };
  auto tri_solve_upper = [this](Eigen::VectorXcd v) {
    auto upper = lower_.transpose().triangularView<Eigen::Upper>();
    Eigen::VectorXd re = upper.solve(Eigen::VectorXd(v.real()));
    Eigen::VectorXd im = upper.solve(Eigen::VectorXd(v.imag()));
    return Eigen::VectorXcd(re + Complex(0.0, 1.0) * im);
  };

  Eigen::VectorXcd y = tri_solve_lower(rhs);
  if (has_imag_) {
    Eigen::VectorXcd proj = eigvecs_.transpose().cast<Complex>() * y;
    for (int i = 0; i < n_; ++i) proj(i) /= Complex(1.0, eigvals_(i));
    y = eigvecs_.cast<Complex>() * proj;
  }
  return tri_solve_upper(y);
}

Complex GaussianReducer::quad(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const {
  return (u.transpose() * solve(v))(0, 0);
}

Complex log_gaussian_reduce(const SymmetricQuadraticForm& form) {
  if (form.linear.size() != form.matrix.rows())
    throw std::invalid_argument("gaussian_reduce: linear size does not match dimension");
  GaussianReducer red(form.matrix);
  return red.log_normalization() + 0.5 * red.quad(form.linear, form.linear) + form.constant;
}

Complex gaussian_reduce(const SymmetricQuadraticForm& form) {
  return std::exp(log_gaussian_reduce(form));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw < 2 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned workers = std::min<std::size_t>(hw, (n + 63) / 64);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace qbm
