#include "spinbath/numerics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <queue>

namespace spinbath {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Bessel J0/J1.
//
// The power series sum_m (-1)^m (x/2)^{2m+nu} / (m! (m+nu)!) loses digits to
// cancellation as x grows (the largest term reaches ~1.7e5 at x=16), so it is
// accumulated in long double and used only for |x| <= 14. Beyond that the
// Hankel expansion J_nu ~ sqrt(2/pi x)[P cos chi - Q sin chi] is truncated at
// its smallest term, which is ~e^{-2x} < 1e-12 for x >= 14.

double bessel_series(int nu, double x) {
  const long double q = 0.25L * static_cast<long double>(x) * x;
  long double term = (nu == 0) ? 1.0L : 0.5L * x;
  long double sum = term;
  long double comp = 0.0L;
  for (int m = 1; m <= 120; ++m) {
    term *= -q / (static_cast<long double>(m) * (m + nu));
    const long double t = sum + term;
    if (std::fabs(static_cast<double>(sum)) >= std::fabs(static_cast<double>(term)))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
    if (std::fabs(static_cast<double>(term)) <
        1e-22 * (std::fabs(static_cast<double>(sum)) + 1e-300))
      break;
  }
  return static_cast<double>(sum + comp);
}

double bessel_hankel(int nu, double x) {
  const long double mu = 4.0L * nu * nu;
  long double p = 1.0L, q = 0.0L;
  long double a = 1.0L;
  long double prev = 1e300L;
  for (int m = 1; m <= 80; ++m) {
    a *= (mu - (2.0L * m - 1) * (2.0L * m - 1)) / (8.0L * m * x);
    const long double mag = std::fabs(static_cast<double>(a));
    if (mag >= prev) break;  // past the smallest term of the divergent tail
    prev = mag;
    switch (m % 4) {
      case 0: p += a; break;
      case 1: q += a; break;
      case 2: p -= a; break;
      default: q -= a; break;
    }
    if (mag < 1e-20) break;
  }
  const long double chi =
      static_cast<long double>(x) - (0.5L * nu + 0.25L) * 3.141592653589793238462643383279503L;
  const long double amp = std::sqrt(2.0L / (3.141592653589793238462643383279503L * x));
  return static_cast<double>(amp * (p * std::cos(chi) - q * std::sin(chi)));
}

constexpr double kBesselCrossover = 14.0;

// ---------------------------------------------------------------------------
// G7/K15 nodes and weights (positive half; index 7 is the center).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.10479001032225018,
    0.14065325971552592, 0.16900472663926790, 0.19035057806478540,
    0.20443294007529889, 0.20948214108472782};
constexpr double kWg[4] = {0.12948496616886969, 0.27970539148927664,
                           0.38183005050511894, 0.41795918367346938};

struct PanelEval {
  double k15 = 0.0;
  double err = 0.0;
};

PanelEval gk15(const std::function<double(double)>& f, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double fv[15];
  double resk = 0.0, resg = 0.0, resabs = 0.0;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double f1 = f(mid - dx);
    const double f2 = f(mid + dx);
    fv[i] = f1;
    fv[14 - i] = f2;
    resk += kWgk[i] * (f1 + f2);
    resabs += kWgk[i] * (std::fabs(f1) + std::fabs(f2));
    if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
  }
  const double fc = f(mid);
  fv[7] = fc;
  resk += kWgk[7] * fc;
  resabs += kWgk[7] * std::fabs(fc);
  resg += kWg[3] * fc;

  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int i = 0; i < 7; ++i)
    resasc += kWgk[i] *
              (std::fabs(fv[i] - reskh) + std::fabs(fv[14 - i] - reskh));

  PanelEval out;
  out.k15 = resk * half;
  double err = std::fabs((resk - resg) * half);
  resasc *= std::fabs(half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  out.err = err;
  return out;
}

}  // namespace

double bessel_j0(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::fabs(x);
  return ax <= kBesselCrossover ? bessel_series(0, ax) : bessel_hankel(0, ax);
}

double bessel_j1(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::fabs(x);
  const double v =
      ax <= kBesselCrossover ? bessel_series(1, ax) : bessel_hankel(1, ax);
  return x < 0.0 ? -v : v;
}

double j1_over_z(double z) {
  const double az = std::fabs(z);
  if (az < 0.5) {
    // J1(z)/z = 1/2 sum_m (-1)^m (z^2/4)^m / (m! (m+1)!)
    const double q = 0.25 * z * z;
    double term = 0.5, sum = 0.5;
    for (int m = 1; m <= 12; ++m) {
      term *= -q / (m * (m + 1.0));
      sum += term;
      if (std::fabs(term) < 1e-18) break;
    }
    return sum;
  }
  return bessel_j1(z) / z;
}

double erfc_scaled(double z) {
  if (std::isnan(z)) return z;
  if (z < 0.0)
    throw validation_error("z", "erfc_scaled requires z >= 0");
  if (z < 2.0) {
    // erf power series in long double, then scale; cancellation in 1 - erf
    // is mild on [0, 2).
    const long double zz = static_cast<long double>(z) * z;
    long double term = z;
    long double sum = 0.0L;
    if (z > 0.0) {
      sum = term;
      for (int n = 1; n <= 80; ++n) {
        term *= -zz / n;
        const long double add = term / (2 * n + 1);
        sum += add;
        if (std::fabs(static_cast<double>(add)) < 1e-22) break;
      }
    }
    const long double erf =
        1.1283791670955125738961589031215452L * sum;  // 2/sqrt(pi)
    return static_cast<double>(std::exp(zz) * (1.0L - erf));
  }
  // Stieltjes continued fraction, modified Lentz:
  // erfcx(z) = (1/sqrt(pi)) / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
  const long double b = z;
  long double fv = b, C = b, D = 0.0L;
  for (int n = 1; n <= 300; ++n) {
    const long double an = 0.5L * n;
    D = b + an * D;
    if (D == 0.0L) D = 1e-300L;
    C = b + an / C;
    if (C == 0.0L) C = 1e-300L;
    D = 1.0L / D;
    const long double delta = C * D;
    fv *= delta;
    if (std::fabs(static_cast<double>(delta) - 1.0) < 1e-19) break;
  }
  return static_cast<double>(0.56418958354775628694807945156077L / fv);  // 1/sqrt(pi)
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureSettings& settings) {
  if (!(settings.abs_tol > 0.0) || !(settings.rel_tol > 0.0))
    throw validation_error("quadrature", "tolerances must be positive");
  if (settings.max_subdivisions < 1)
    throw validation_error("quadrature", "max_subdivisions must be >= 1");
  if (!(a <= b)) throw validation_error("quadrature", "need a <= b");
  if (a == b) return {0.0, 0.0};

  struct Panel {
    double lo, hi, value, err;
    long id;
  };
  struct ByErr {
    bool operator()(const Panel& x, const Panel& y) const {
      if (x.err != y.err) return x.err < y.err;
      return x.id > y.id;  // deterministic tie-break: older panel first
    }
  };

  long next_id = 0;
  std::priority_queue<Panel, std::vector<Panel>, ByErr> heap;

  int n0 = 1;
  if (settings.oscillation_hint > 0.0 && settings.abs_tol <= 1e-4) {
    const double phase = (b - a) * settings.oscillation_hint;
    const double want = std::ceil(phase / (0.25 * kPi));
    if (want > 2e6)
      throw numeric_error("oscillation hint demands more than 2e6 panels");
    n0 = std::max(1, static_cast<int>(want));
  }

  double total = 0.0, total_err = 0.0;
  for (int i = 0; i < n0; ++i) {
    const double lo = a + (b - a) * static_cast<double>(i) / n0;
    const double hi = (i + 1 == n0) ? b : a + (b - a) * static_cast<double>(i + 1) / n0;
    const PanelEval pe = gk15(f, lo, hi);
    heap.push({lo, hi, pe.k15, pe.err, next_id++});
    total += pe.k15;
    total_err += pe.err;
  }

  auto finish = [&heap](double& value, double& err) {
    // Re-sum panels in interval order with compensation so the result is a
    // pure function of the final panel set.
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
      panels.push_back(heap.top());
      heap.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
    Kahan v, e;
    for (const Panel& p : panels) {
      v.add(p.value);
      e.add(p.err);
    }
    value = v.value();
    err = e.value();
  };

  int splits = 0;
  while (total_err > std::max(settings.abs_tol,
                              settings.rel_tol * std::fabs(total))) {
    if (splits >= settings.max_subdivisions) {
      double value, err;
      finish(value, err);
      throw quadrature_error("quadrature subdivision budget exhausted", value,
                             err);
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      // interval no longer splittable; accept as is
      worst.err = 0.0;
      heap.push(worst);
      continue;
    }
    const PanelEval l = gk15(f, worst.lo, mid);
    const PanelEval r = gk15(f, mid, worst.hi);
    heap.push({worst.lo, mid, l.k15, l.err, next_id++});
    heap.push({mid, worst.hi, r.k15, r.err, next_id++});
    total += l.k15 + r.k15 - worst.value;
    total_err += l.err + r.err - worst.err;
    ++splits;
  }

  QuadratureResult out;
  finish(out.value, out.error_estimate);
  return out;
}

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1) throw validation_error("nodes", "gauss_hermite needs n >= 1");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double bk = std::sqrt(0.5 * k);
    jacobi(k, k - 1) = bk;
    jacobi(k - 1, k) = bk;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  if (es.info() != Eigen::Success)
    throw numeric_error("Gauss-Hermite eigensolve failed");
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double sqrt_pi = std::sqrt(kPi);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = sqrt_pi * v0 * v0;
  }
  return rule;
}

// ---------------------------------------------------------------------------
// PiecewiseChebyshev

namespace {

template <typename T>
double magnitude(const T& v) {
  return std::abs(v);
}

}  // namespace

template <typename T>
PiecewiseChebyshev<T> PiecewiseChebyshev<T>::build(
    const std::function<T(double)>& f, double a, double b, double tol,
    double oscillation_hint) {
  if (!(b > a)) throw validation_error("chebyshev", "need b > a");
  constexpr int K = kDegree;

  PiecewiseChebyshev<T> out;
  out.a_ = a;
  out.b_ = b;

  // cos(pi j / K), j = 0..K
  double cosj[K + 1];
  for (int j = 0; j <= K; ++j) cosj[j] = std::cos(kPi * j / K);

  struct Work {
    double lo, hi;
  };
  std::vector<Work> queue;
  int n0 = 1;
  if (oscillation_hint > 0.0) {
    const double periods = (b - a) * oscillation_hint / (2.0 * kPi);
    n0 = std::max(1, std::min(100000, static_cast<int>(std::ceil(periods))));
  }
  for (int i = n0 - 1; i >= 0; --i) {
    const double lo = a + (b - a) * static_cast<double>(i) / n0;
    const double hi = (i + 1 == n0) ? b : a + (b - a) * static_cast<double>(i + 1) / n0;
    queue.push_back({lo, hi});
  }

  while (!queue.empty()) {
    const Work w = queue.back();
    queue.pop_back();
    const double mid = 0.5 * (w.lo + w.hi);
    const double half = 0.5 * (w.hi - w.lo);

    T fj[K + 1];
    for (int j = 0; j <= K; ++j) fj[j] = f(mid + half * cosj[j]);

    Panel p;
    p.lo = w.lo;
    p.hi = w.hi;
    for (int k = 0; k <= K; ++k) {
      T acc = 0.5 * (fj[0] + (k % 2 ? -1.0 : 1.0) * fj[K]);
      for (int j = 1; j < K; ++j)
        acc += fj[j] * std::cos(kPi * j * k / K);
      acc *= 2.0 / K;
      if (k == 0 || k == K) acc *= 0.5;
      p.coeff[k] = acc;
    }

    // tail estimate plus direct midpoint checks
    double err = 2.0 * (magnitude(p.coeff[K - 1]) + magnitude(p.coeff[K]));
    for (int j : {2, 8, 13}) {
      const double y = std::cos(kPi * (j + 0.5) / K);
      // Clenshaw
      T b1 = 0, b2 = 0;
      for (int k = K; k >= 1; --k) {
        const T t = 2.0 * y * b1 - b2 + p.coeff[k];
        b2 = b1;
        b1 = t;
      }
      const T pv = y * b1 - b2 + p.coeff[0];
      err = std::max(err, magnitude(pv - f(mid + half * y)));
    }

    if (err > tol && half > 1e-12 * (std::fabs(b) + std::fabs(a) + 1.0)) {
      queue.push_back({mid, w.hi});
      queue.push_back({w.lo, mid});
      if (queue.size() + out.panels_.size() > 200000)
        throw numeric_error("chebyshev tabulation did not converge");
      continue;
    }

    // antiderivative coefficients (in y units), fixed so A(-1) = 0:
    // A_1 = c_0 - c_2/2, A_k = (c_{k-1} - c_{k+1})/(2k) for k >= 2
    T anti[K + 2];
    for (int k = 0; k <= K + 1; ++k) anti[k] = T(0);
    anti[1] = p.coeff[0] - 0.5 * p.coeff[2];
    for (int k = 2; k <= K + 1; ++k) {
      const T cm1 = p.coeff[k - 1];
      const T cp1 = (k + 1 <= K) ? p.coeff[k + 1] : T(0);
      anti[k] = (cm1 - cp1) / (2.0 * k);
    }
    // A(-1) = sum anti[k] T_k(-1) = sum anti[k] (-1)^k
    T a_at_m1 = T(0);
    for (int k = 1; k <= K + 1; ++k)
      a_at_m1 += (k % 2 ? -1.0 : 1.0) * anti[k];
    anti[0] = -a_at_m1;
    for (int k = 0; k <= K + 1; ++k) p.anti[k] = anti[k] * half;

    // A(+1) - A(-1) in x units
    T a_at_p1 = p.anti[0];
    for (int k = 1; k <= K + 1; ++k) a_at_p1 += p.anti[k];
    p.full_integral = a_at_p1;

    out.panels_.push_back(p);
  }

  std::sort(out.panels_.begin(), out.panels_.end(),
            [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
  out.prefix_.resize(out.panels_.size() + 1);
  T run = T(0);
  for (std::size_t i = 0; i < out.panels_.size(); ++i) {
    out.prefix_[i] = run;
    run += out.panels_[i].full_integral;
  }
  out.prefix_[out.panels_.size()] = run;
  return out;
}

template <typename T>
const typename PiecewiseChebyshev<T>::Panel& PiecewiseChebyshev<T>::panel_at(
    double x) const {
  std::size_t lo = 0, hi = panels_.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (x < panels_[mid].lo)
      hi = mid;
    else
      lo = mid;
  }
  return panels_[lo];
}

template <typename T>
T PiecewiseChebyshev<T>::eval(double x) const {
  const Panel& p = panel_at(std::clamp(x, a_, b_));
  const double y =
      std::clamp((2.0 * x - p.lo - p.hi) / (p.hi - p.lo), -1.0, 1.0);
  T b1 = 0, b2 = 0;
  for (int k = kDegree; k >= 1; --k) {
    const T t = 2.0 * y * b1 - b2 + p.coeff[k];
    b2 = b1;
    b1 = t;
  }
  return y * b1 - b2 + p.coeff[0];
}

template <typename T>
T PiecewiseChebyshev<T>::integral(double lo, double hi) const {
  lo = std::clamp(lo, a_, b_);
  hi = std::clamp(hi, a_, b_);
  if (hi <= lo) return T(0);

  auto anti_at = [this](double x) -> T {
    const Panel& p = panel_at(x);
    const double y =
        std::clamp((2.0 * x - p.lo - p.hi) / (p.hi - p.lo), -1.0, 1.0);
    T b1 = 0, b2 = 0;
    for (int k = kDegree + 1; k >= 1; --k) {
      const T t = 2.0 * y * b1 - b2 + p.anti[k];
      b2 = b1;
      b1 = t;
    }
    return y * b1 - b2 + p.anti[0];
  };
  auto panel_index = [this](double x) -> std::size_t {
    std::size_t l = 0, h = panels_.size();
    while (h - l > 1) {
      const std::size_t m = (l + h) / 2;
      if (x < panels_[m].lo)
        h = m;
      else
        l = m;
    }
    return l;
  };

  const std::size_t il = panel_index(lo);
  const std::size_t ih = panel_index(hi);
  if (il == ih) return anti_at(hi) - anti_at(lo);
  // full panels strictly between il and ih via prefix sums
  T acc = panels_[il].full_integral - anti_at(lo);  // rest of panel il
  acc += prefix_[ih] - prefix_[il + 1];
  acc += anti_at(hi);  // head of panel ih (A(-1)=0 there)
  return acc;
}

template class PiecewiseChebyshev<double>;
template class PiecewiseChebyshev<std::complex<double>>;

}  // namespace spinbath
