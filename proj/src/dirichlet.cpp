#include "dhl/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>

#include "dhl/error.hpp"

namespace dhl {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_corner(long N, Cell c) { return std::labs(c.n) == N && std::labs(c.m) == N; }

bool on_boundary(long N, Cell c) {
  return std::max(std::labs(c.n), std::labs(c.m)) == N && std::labs(c.n) != std::labs(c.m);
}

/// side index and free coordinate of a boundary cell
std::pair<int, long> side_of(long N, Cell y) {
  require(on_boundary(N, y), "(" + std::to_string(y.n) + "," + std::to_string(y.m) +
                                 ") is not a non-corner boundary cell of Q_" + std::to_string(N));
  if (y.m == N) return {0, y.n};
  if (y.m == -N) return {1, y.n};
  if (y.n == N) return {2, y.m};
  return {3, y.m};
}

double sin_k(long N, long k, long j) {
  long r = (k * (j + N)) % (4 * N);
  return std::sin(kPi * static_cast<double>(r) / (2.0 * static_cast<double>(N)));
}

double ptop(long N, long n, long m, long n1) {
  double acc = 0.0;
  for (long k = 1; k < 2 * N; ++k)
    acc += sin_k(N, k, n) * sin_k(N, k, n1) * kernels::rho(kernels::ak(N, k), N, static_cast<double>(m));
  acc /= static_cast<double>(N);
  return kernels::kernel_sign_fault() ? -acc : acc;
}

GridFunction grid_from_doubles(const BoundaryData& data, const std::vector<double>& g) {
  const long N = data.N, J = 2 * N + 1;
  const ScalarKind f53 = ScalarKind::floating(53);
  GridFunction u = GridFunction::standard({{0, 0}, N}, f53);
  for (long m = -N; m <= N; ++m)
    for (long n = -N; n <= N; ++n) {
      Cell c{n, m};
      if (is_corner(N, c)) continue;
      u.set(c, Scalar::from_double(g[static_cast<std::size_t>((m + N) * J + n + N)], f53));
    }
  return u;
}

std::vector<double> boundary_grid(const BoundaryData& data) {
  const long N = data.N, J = 2 * N + 1;
  std::vector<double> g(static_cast<std::size_t>(J * J), 0.0);
  for (std::size_t i = 0; i < data.cells.size(); ++i) {
    const Cell& c = data.cells[i];
    g[static_cast<std::size_t>((c.m + N) * J + c.n + N)] = to_double(data.values[i]);
  }
  return g;
}

// Exact solve of the interior system 4u_x - sum of interior neighbours = r.
// A is an integer band matrix (half-bandwidth 2N-1, natural order, no
// pivoting: M-matrix). With r scaled to integers, det(A) u is an integer
// vector; it is recovered by CRT from banded elimination modulo 62-bit
// primes until their product exceeds twice the Hadamard bound.
using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); }

u64 invmod(u64 a, u64 p) {
  u64 r = 1, e = p - 2;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

const std::vector<u64>& crt_primes(std::size_t count) {
  static std::mutex mu;
  static std::vector<u64> primes;
  std::lock_guard<std::mutex> lock(mu);
  Integer c = (Integer(1) << 62) - 1;
  if (!primes.empty()) c = Integer(primes.back()) - 2;
  while (primes.size() < count) {
    if (mpz_probab_prime_p(c.get_mpz_t(), 30) > 0) primes.push_back(c.get_ui());
    c -= 2;
  }
  return primes;
}

/// Band elimination mod p; false on a zero pivot. x receives the solution.
bool solve_mod(long W, const std::vector<u64>& r, u64 p, std::vector<u64>& x, u64& det) {
  const long n = W * W, w = W, bw = 2 * w + 1;
  std::vector<u64> band(static_cast<std::size_t>(n * bw), 0);
  auto at = [&](long i, long col) -> u64& { return band[static_cast<std::size_t>(i * bw + col - i + w)]; };
  const u64 m1 = p - 1;
  for (long i = 0; i < n; ++i) {
    long row = i / W, c = i % W;
    at(i, i) = 4;
    if (c > 0) at(i, i - 1) = m1;
    if (c < W - 1) at(i, i + 1) = m1;
    if (row > 0) at(i, i - W) = m1;
    if (row < W - 1) at(i, i + W) = m1;
  }
  x = r;
  det = 1;
  for (long i = 0; i < n; ++i) {
    const u64 piv = at(i, i);
    if (piv == 0) return false;
    det = mulmod(det, piv, p);
    const u64 inv = invmod(piv, p);
    const long last = std::min(n - 1, i + w);
    for (long j = i + 1; j <= last; ++j) {
      const u64 e = at(j, i);
      if (e == 0) continue;
      const u64 f = mulmod(e, inv, p);
      for (long col = i; col <= last; ++col) {
        const u64 src = at(i, col);
        if (src) at(j, col) = (at(j, col) + p - mulmod(f, src, p)) % p;
      }
      x[static_cast<std::size_t>(j)] = (x[static_cast<std::size_t>(j)] + p - mulmod(f, x[static_cast<std::size_t>(i)], p)) % p;
    }
  }
  for (long i = n - 1; i >= 0; --i) {
    u64 acc = x[static_cast<std::size_t>(i)];
    for (long col = i + 1; col <= std::min(n - 1, i + w); ++col)
      acc = (acc + p - mulmod(at(i, col), x[static_cast<std::size_t>(col)], p)) % p;
    x[static_cast<std::size_t>(i)] = mulmod(acc, invmod(at(i, i), p), p);
  }
  return true;
}

std::vector<Rational> solve_exact_interior(long N, const std::vector<Rational>& rhs) {
  const long W = 2 * N - 1, n = W * W;
  Integer L = 1;
  for (const auto& q : rhs) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> r(rhs.size());
  Integer rmax = 0;
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    r[i] = rhs[i].get_num() * (L / rhs[i].get_den());
    if (abs(r[i]) > rmax) rmax = abs(r[i]);
  }
  // |det A| <= 20^(n/2); |det A x_i| <= 20^((n-1)/2) sqrt(n) max|r|
  const double bits = 0.5 * std::log2(20.0) * static_cast<double>(n) + static_cast<double>(mpz_sizeinbase(rmax.get_mpz_t(), 2)) +
                      0.5 * std::log2(static_cast<double>(n)) + 4.0;
  std::vector<Integer> X(static_cast<std::size_t>(n), 0);
  Integer D = 0, M = 1;
  std::vector<u64> rm(static_cast<std::size_t>(n)), xm;
  for (std::size_t k = 0; static_cast<double>(mpz_sizeinbase(M.get_mpz_t(), 2)) < bits + 1.0; ++k) {
    const u64 p = crt_primes(k + 1)[k];
    for (std::size_t i = 0; i < r.size(); ++i) {
      Integer t;
      mpz_fdiv_r_ui(t.get_mpz_t(), r[i].get_mpz_t(), p);
      rm[i] = t.get_ui();
    }
    u64 detp = 0;
    if (!solve_mod(W, rm, p, xm, detp)) continue;
    // Garner step: Y += M * ((y_p - Y) / M mod p); here for det * x and det
    const Integer Mmod = M % Integer(p);
    const u64 minv = invmod(Mmod.get_ui(), p);
    auto lift = [&](Integer& Y, u64 yp) {
      Integer t;
      mpz_fdiv_r_ui(t.get_mpz_t(), Y.get_mpz_t(), p);
      const u64 diff = (yp + p - t.get_ui()) % p;
      Y += M * Integer(mulmod(diff, minv, p));
    };
    for (long i = 0; i < n; ++i) lift(X[static_cast<std::size_t>(i)], mulmod(xm[static_cast<std::size_t>(i)], detp, p));
    lift(D, detp);
    M *= p;
  }
  const Integer half = M / 2;
  if (D > half) D -= M;
  std::vector<Rational> out(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    Integer& Y = X[static_cast<std::size_t>(i)];
    if (Y > half) Y -= M;
    out[static_cast<std::size_t>(i)] = Rational(Y, D * L);
    out[static_cast<std::size_t>(i)].canonicalize();
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------- BoundaryData

std::vector<Cell> BoundaryData::boundary_cells(long N) {
  require(N >= 1, "boundary needs N >= 1");
  std::vector<Cell> out;
  for (long m = -N; m <= N; ++m)
    for (long n = -N; n <= N; ++n)
      if (on_boundary(N, {n, m})) out.push_back({n, m});
  return out;
}

BoundaryData BoundaryData::from_function(long N, const ScalarKind& kind, const std::function<Scalar(Cell)>& f) {
  BoundaryData d;
  d.N = N;
  d.kind = kind;
  d.cells = boundary_cells(N);
  for (Cell c : d.cells) d.values.push_back(f(c));
  d.validate();
  return d;
}

BoundaryData BoundaryData::from_grid(const GridFunction& u, long N) {
  return from_function(N, u.kind(), [&](Cell c) { return u.at(c); });
}

std::size_t BoundaryData::index_of(Cell c) const {
  auto it = std::lower_bound(cells.begin(), cells.end(), c, [](const Cell& a, const Cell& b) {
    return a.m != b.m ? a.m < b.m : a.n < b.n;
  });
  require(it != cells.end() && *it == c, "(" + std::to_string(c.n) + "," + std::to_string(c.m) +
                                             ") is not a boundary cell");
  return static_cast<std::size_t>(it - cells.begin());
}

std::vector<double> BoundaryData::as_doubles() const {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(to_double(v));
  return out;
}

double BoundaryData::max_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::fabs(to_double(v)));
  return m;
}

void BoundaryData::validate() const {
  require(N >= 1, "boundary data needs N >= 1");
  require(kind.real(), "boundary data must be real");
  require(cells.size() == static_cast<std::size_t>(4 * (2 * N - 1)) && values.size() == cells.size(),
          "boundary data needs exactly 4(2N-1) entries");
  auto expect = boundary_cells(N);
  require(cells == expect, "boundary cells out of order or not on the boundary of Q_N");
  for (const auto& v : values) {
    bool ok = v.kind() == kind ||
              (kind.tag() == ScalarKind::Tag::Quadratic && v.kind().tag() == ScalarKind::Tag::Rational);
    require(ok, "boundary value kind mismatch");
  }
}

BoundaryData random_boundary(long N, SplitMix64& rng, const std::string& mode) {
  require(mode == "sign" || mode == "rational", "random boundary mode must be 'sign' or 'rational'");
  return BoundaryData::from_function(N, ScalarKind::rational(), [&](Cell) {
    if (mode == "sign") return Scalar(Rational(rng.sign()));
    return Scalar(rng.rational(-1, 1, 16));
  });
}

// -------------------------------------------------------------------- kernel

double compute_ak(long N, long k) { return kernels::ak(N, k); }

BigFloat compute_ak_mp(long N, long k, unsigned bits) {
  require(N >= 1 && k > 0 && k < 2 * N, "k must satisfy 0 < k < 2N");
  unsigned work = bits + 32;
  BigFloat t(work), pi(work), out(bits);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  mpfr_mul_si(t.get(), pi.get(), k, MPFR_RNDN);
  mpfr_div_si(t.get(), t.get(), 2 * N, MPFR_RNDN);
  mpfr_cos(t.get(), t.get(), MPFR_RNDN);
  mpfr_si_sub(t.get(), 2, t.get(), MPFR_RNDN);
  mpfr_acosh(t.get(), t.get(), MPFR_RNDN);
  mpfr_set(out.get(), t.get(), MPFR_RNDN);
  return out;
}

double kernel_value(long N, Cell x, Cell y) {
  require(N >= 1, "N must be at least 1");
  require(std::labs(x.n) <= N - 1 && std::labs(x.m) <= N - 1, "x must be an interior cell of Q_N");
  auto [side, coord] = side_of(N, y);
  switch (side) {
    case 0:
      return ptop(N, x.n, x.m, coord);
    case 1:
      return ptop(N, x.n, -x.m, coord);
    case 2:
      return ptop(N, x.m, x.n, coord);
    default:
      return ptop(N, x.m, -x.n, coord);
  }
}

std::complex<double> kernel_value_complex(long N, std::complex<double> z, long m, Cell y) {
  require(N >= 1, "N must be at least 1");
  require(std::labs(m) <= N - 1, "m must satisfy |m| <= N-1");
  auto [side, coord] = side_of(N, y);
  std::complex<double> acc = 0.0;
  const double n = static_cast<double>(N);
  for (long k = 1; k < 2 * N; ++k) {
    double a = kernels::ak(N, k);
    double sy = sin_k(N, k, coord);
    if (side == 0 || side == 1) {
      std::complex<double> s = std::sin(kPi * static_cast<double>(k) * (z + 1.0) / 2.0);
      acc += s * sy * kernels::rho(a, N, static_cast<double>(side == 0 ? m : -m));
    } else {
      std::complex<double> x = side == 2 ? z * n : -z * n;
      acc += sin_k(N, k, m) * sy * kernels::rho(a, N, x);
    }
  }
  acc /= n;
  return kernels::kernel_sign_fault() ? -acc : acc;
}

PoissonKernelTable build_kernel_table(long N, kernels::Exec exec) {
  require(N >= 1, "N must be at least 1");
  PoissonKernelTable t;
  t.N = N;
  for (long m = -N + 1; m <= N - 1; ++m)
    for (long n = -N + 1; n <= N - 1; ++n) t.interior.push_back({n, m});
  t.boundary = BoundaryData::boundary_cells(N);
  std::vector<int> side;
  std::vector<long> coord;
  for (Cell y : t.boundary) {
    auto [s, c] = side_of(N, y);
    side.push_back(s);
    coord.push_back(c);
  }
  auto basis = kernels::make_basis(N);
  kernels::fill_kernel_table(basis, side, coord, t.values, exec);
  return t;
}

GridFunction solve_kernel(const BoundaryData& data, kernels::Exec exec) {
  return grid_from_doubles(data, solve_float(data, false, exec));
}

GridFunction solve_kernel_table(const BoundaryData& data, const PoissonKernelTable& table) {
  data.validate();
  require(table.N == data.N, "kernel table radius differs from the data radius");
  const long N = data.N, J = 2 * N + 1;
  std::vector<double> g = boundary_grid(data);
  auto vals = data.as_doubles();
  for (std::size_t i = 0; i < table.interior.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < vals.size(); ++j) acc += table.at(i, j) * vals[j];
    const Cell& x = table.interior[i];
    g[static_cast<std::size_t>((x.m + N) * J + x.n + N)] = acc;
  }
  return grid_from_doubles(data, g);
}

std::vector<double> solve_float(const BoundaryData& data, bool direct, kernels::Exec exec) {
  data.validate();
  const long N = data.N;
  std::vector<double> g = boundary_grid(data);
  if (direct) {
    DirectOptions opt;
    double tol = opt.rel_tol * data.max_abs();
    double omega = 2.0 / (1.0 + std::sin(kPi / (2.0 * static_cast<double>(N))));
    auto res = kernels::red_black_sor(N, g, omega, tol, opt.max_iter, exec);
    if (!res.converged)
      throw precondition_error("iteration cap exceeded: residual " + std::to_string(res.residual) + " after " +
                               std::to_string(res.iterations) + " sweeps");
    return g;
  }
  auto basis = kernels::make_basis(N);
  std::vector<std::vector<double>> coef(4, std::vector<double>(static_cast<std::size_t>(basis.K()), 0.0));
  for (std::size_t i = 0; i < data.cells.size(); ++i) {
    auto [side, coord] = side_of(N, data.cells[i]);
    double v = to_double(data.values[i]);
    if (v == 0.0) continue;
    for (long k = 1; k <= basis.K(); ++k) coef[static_cast<std::size_t>(side)][static_cast<std::size_t>(k - 1)] += basis.S(k, coord) * v;
  }
  std::vector<double> out = g;
  kernels::kernel_sum(basis, coef, out, exec);
  return out;
}

GridFunction solve_direct(const BoundaryData& data, DirectMode mode, const DirectOptions& opt, DirectReport* report) {
  data.validate();
  const long N = data.N;
  if (mode == DirectMode::FloatIterative) {
    require(N <= 512, "float-iterative solve supports N <= 512");
    std::vector<double> g = boundary_grid(data);
    double tol = opt.rel_tol * data.max_abs();
    double omega = 2.0 / (1.0 + std::sin(kPi / (2.0 * static_cast<double>(N))));
    auto res = kernels::red_black_sor(N, g, omega, tol, opt.max_iter, opt.exec);
    if (report) *report = {res.iterations, res.residual};
    if (!res.converged)
      throw precondition_error("iteration cap exceeded: residual " + std::to_string(res.residual) + " after " +
                               std::to_string(res.iterations) + " sweeps");
    return grid_from_doubles(data, g);
  }
  require(N <= 16, "exact solve supports N <= 16");
  require(data.kind.tag() == ScalarKind::Tag::Rational, "exact solve needs rational boundary data");
  const long W = 2 * N - 1, n = W * W;
  std::vector<Rational> rhs(static_cast<std::size_t>(n), Rational(0));
  for (long i = 0; i < n; ++i) {
    long r = i / W, c = i % W;
    Cell x{c - N + 1, r - N + 1};
    const Cell nb[4] = {{x.n + 1, x.m}, {x.n - 1, x.m}, {x.n, x.m + 1}, {x.n, x.m - 1}};
    for (Cell y : nb)
      if (on_boundary(N, y)) rhs[static_cast<std::size_t>(i)] += data.at(y).as_rational();
  }
  rhs = solve_exact_interior(N, rhs);
  GridFunction u = GridFunction::standard({{0, 0}, N}, ScalarKind::rational());
  for (std::size_t i = 0; i < data.cells.size(); ++i) u.set(data.cells[i], data.values[i]);
  for (long i = 0; i < n; ++i) {
    long r = i / W, c = i % W;
    u.set(Cell{c - N + 1, r - N + 1}, Scalar(rhs[static_cast<std::size_t>(i)]));
  }
  if (report) *report = {0, 0.0};
  return u;
}

// ------------------------------------------------------------- complex scan

std::vector<std::complex<double>> ComplexRegion::grid() const {
  require(nx >= 2 && ny >= 2, "complex region needs at least 2x2 samples");
  std::vector<std::complex<double>> zs;
  zs.reserve(static_cast<std::size_t>(nx * ny));
  for (int j = 0; j < ny; ++j) {
    double im = -1.0 / 16.0 + (1.0 / 8.0) * static_cast<double>(j) / static_cast<double>(ny - 1);
    for (int i = 0; i < nx; ++i) {
      double re = -0.5 + static_cast<double>(i) / static_cast<double>(nx - 1);
      zs.emplace_back(re, im);
    }
  }
  return zs;
}

ScanReport complex_extension_scan(long N, const ComplexRegion& region, long m_stride, kernels::Exec exec) {
  require(N >= 2, "complex scan needs N >= 2");
  long stride = m_stride > 0 ? m_stride : std::max(1L, N / 16);
  std::vector<long> ms;
  long half = N / 2;
  for (long m = -(half / stride) * stride; m <= half; m += stride) ms.push_back(m);
  auto basis = kernels::make_basis(N);
  auto res = kernels::complex_scan(basis, region.grid(), ms, exec);
  ScanReport rep;
  rep.N = N;
  rep.max_abs = res.max_abs;
  rep.scaled = static_cast<double>(N) * res.max_abs;
  rep.y = res.side == 0 ? Cell{res.y, N} : Cell{N, res.y};
  rep.m = res.m;
  rep.z = res.z;
  rep.m_stride = stride;
  return rep;
}

ScanReport complex_extension_scan(long N, long m, Cell y, const ComplexRegion& region) {
  require(2 * std::labs(m) <= N, "scan requires |m| <= N/2");
  ScanReport rep;
  rep.N = N;
  rep.m = m;
  rep.y = y;
  rep.max_abs = -1.0;
  for (const auto& z : region.grid()) {
    double v = std::abs(kernel_value_complex(N, z, m, y));
    if (v > rep.max_abs) {
      rep.max_abs = v;
      rep.z = z;
    }
  }
  rep.scaled = static_cast<double>(N) * rep.max_abs;
  return rep;
}

double gradient_ratio(const GridFunction& u, long R) {
  const Square& W = u.square();
  require(R >= 1, "gradient_ratio needs R >= 1");
  require(2 * R <= W.radius, "Q_2R must lie inside the window");
  const Cell c = W.center;
  double top = 0.0;
  for (long m = c.m - 2 * R; m <= c.m + 2 * R; ++m)
    for (long n = c.n - 2 * R; n <= c.n + 2 * R; ++n)
      if (u.is_set(Cell{n, m})) top = std::max(top, std::fabs(to_double(u.at(Cell{n, m}))));
  if (top == 0.0) return 0.0;
  double worst = 0.0;
  for (long m = c.m - R; m <= c.m + R; ++m)
    for (long n = c.n - R; n <= c.n + R; ++n) {
      if (!u.is_set(Cell{n, m})) continue;
      if (n + 1 <= c.n + R && u.is_set(Cell{n + 1, m}))
        worst = std::max(worst, std::fabs(to_double(u.at(Cell{n + 1, m}) - u.at(Cell{n, m}))));
      if (m + 1 <= c.m + R && u.is_set(Cell{n, m + 1}))
        worst = std::max(worst, std::fabs(to_double(u.at(Cell{n, m + 1}) - u.at(Cell{n, m}))));
    }
  return worst * static_cast<double>(R) / top;
}

}  // namespace dhl
