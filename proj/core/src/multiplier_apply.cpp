#include "levymult/multiplier_apply.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "levymult/errors.hpp"

namespace levymult {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t checked_size(int dim, std::size_t n) {
  if (dim < 1 || dim > 4) throw std::invalid_argument("dimension must be 1..4");
  if (n < 4 || !is_power_of_two(n))
    throw std::invalid_argument("points per axis must be a power of two >= 4");
  std::size_t total = 1;
  for (int k = 0; k < dim; ++k) {
    if (total > (std::size_t(1) << 28) / n)
      throw std::invalid_argument("grid too large");
    total *= n;
  }
  return total;
}

}  // namespace

GridFunction::GridFunction(int dim, std::size_t n, double box_length)
    : dim_(dim), n_(n), length_(box_length) {
  if (!(box_length > 0.0))
    throw std::invalid_argument("box length must be positive");
  values_.assign(checked_size(dim, n), cplx{0.0, 0.0});
}

GridFunction GridFunction::sample(int dim, std::size_t n, double box_length,
                                  const std::function<cplx(const Vec&)>& f) {
  GridFunction g(dim, n, box_length);
  for (std::size_t i = 0; i < g.size(); ++i) g.values_[i] = f(g.point(i));
  return g;
}

Vec GridFunction::point(std::size_t flat) const {
  Vec x(dim_);
  const double h = spacing();
  for (int k = dim_ - 1; k >= 0; --k) {
    x[k] = -0.5 * length_ + h * double(flat % n_);
    flat /= n_;
  }
  return x;
}

Vec GridFunction::frequency(std::size_t flat) const {
  Vec xi(dim_);
  const double base = 2.0 * pi / length_;
  for (int k = dim_ - 1; k >= 0; --k) {
    const std::size_t j = flat % n_;
    const double wrapped =
        (j < n_ / 2) ? double(j) : double(j) - double(n_);
    xi[k] = base * wrapped;
    flat /= n_;
  }
  return xi;
}

// ---------------------------------------------------------------------------
// FFT
// ---------------------------------------------------------------------------

namespace {

// Iterative radix-2 transform of a contiguous line of length n.
void fft_line(cplx* a, std::size_t n, const std::vector<cplx>& twiddle) {
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx w = twiddle[k * step];
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

}  // namespace

void fft(std::vector<cplx>& values, int dim, std::size_t n, int sign) {
  if (!is_power_of_two(n)) throw std::invalid_argument("n must be a power of two");
  std::vector<cplx> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k)
    twiddle[k] = cis(double(sign) * 2.0 * pi * double(k) / double(n));

  const std::size_t total = values.size();
  std::vector<cplx> line(n);
  // Axis a has stride n^(dim-1-a) in row-major layout.
  std::size_t stride = 1;
  for (int axis = dim - 1; axis >= 0; --axis) {
    const std::size_t block = stride * n;
    for (std::size_t base = 0; base < total; base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        cplx* p = values.data() + base + off;
        if (stride == 1) {
          fft_line(p, n, twiddle);
        } else {
          for (std::size_t j = 0; j < n; ++j) line[j] = p[j * stride];
          fft_line(line.data(), n, twiddle);
          for (std::size_t j = 0; j < n; ++j) p[j * stride] = line[j];
        }
      }
    }
    stride *= n;
  }
}

// ---------------------------------------------------------------------------
// apply / lp_norm / dft
// ---------------------------------------------------------------------------

std::vector<cplx> multiplier_table(const Symbol& M, const GridFunction& g) {
  if (M.dimension() != g.dimension())
    throw DimensionMismatch("symbol and grid dimensions differ");
  std::vector<cplx> table(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) table[i] = M(g.frequency(i));
  return table;
}

GridFunction apply_table(const std::vector<cplx>& table, const GridFunction& g) {
  if (table.size() != g.size())
    throw DimensionMismatch("multiplier table does not match the grid");
  GridFunction out = g;
  fft(out.values(), out.dimension(), out.points_per_axis(), +1);
  for (std::size_t i = 0; i < out.size(); ++i) out.values()[i] *= table[i];
  fft(out.values(), out.dimension(), out.points_per_axis(), -1);
  const double inv = 1.0 / double(out.size());
  for (auto& v : out.values()) v *= inv;
  return out;
}

GridFunction apply(const Symbol& M, const GridFunction& g) {
  return apply_table(multiplier_table(M, g), g);
}

double lp_norm(const GridFunction& g, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : g.values()) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p >= 1.0)) throw std::invalid_argument("p must lie in [1, inf]");
  const double cell = std::pow(g.spacing(), g.dimension());
  double sum = 0.0;
  if (p == 2.0) {
    for (const auto& v : g.values()) sum += std::norm(v);
    return std::sqrt(sum * cell);
  }
  for (const auto& v : g.values()) sum += std::pow(std::abs(v), p);
  return std::pow(sum * cell, 1.0 / p);
}

std::vector<cplx> dft_physical(const GridFunction& g) {
  // sum_x e^{i(xi,x)} g(x) h^d  =  e^{i(xi,x0)} * FFT_{+}[g] * h^d
  std::vector<cplx> hat = g.values();
  fft(hat, g.dimension(), g.points_per_axis(), +1);
  const double cell = std::pow(g.spacing(), g.dimension());
  const double x0 = -0.5 * g.box_length();
  for (std::size_t i = 0; i < hat.size(); ++i) {
    const Vec xi = g.frequency(i);
    double phase = 0.0;
    for (double c : xi) phase += c * x0;
    hat[i] *= cell * cis(phase);
  }
  return hat;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary grid format assumes a little-endian host");

template <typename T>
void write_raw(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in) {
  T value;
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("truncated grid stream");
  return value;
}

}  // namespace

void GridFunction::write_binary(std::ostream& out) const {
  write_raw<std::uint64_t>(out, std::uint64_t(dim_));
  write_raw<std::uint64_t>(out, std::uint64_t(n_));
  write_raw<double>(out, length_);
  for (const auto& v : values_) {
    write_raw<double>(out, v.real());
    write_raw<double>(out, v.imag());
  }
}

GridFunction GridFunction::read_binary(std::istream& in) {
  const auto dim = read_raw<std::uint64_t>(in);
  const auto n = read_raw<std::uint64_t>(in);
  const auto length = read_raw<double>(in);
  GridFunction g(int(dim), std::size_t(n), length);
  for (auto& v : g.values_) {
    const double re = read_raw<double>(in);
    const double im = read_raw<double>(in);
    v = {re, im};
  }
  return g;
}

void GridFunction::write_binary_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_binary(out);
}

GridFunction GridFunction::read_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_binary(in);
}

void GridFunction::write_csv(std::ostream& out) const {
  if (dim_ > 2)
    throw std::invalid_argument("CSV grids support d <= 2 only");
  out << "# d=" << dim_ << " n=" << n_ << " L=";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", length_);
  out << buf << "\n";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (dim_ == 1)
      out << i;
    else
      out << (i / n_) << ',' << (i % n_);
    std::snprintf(buf, sizeof(buf), "%.17g", values_[i].real());
    out << ',' << buf;
    std::snprintf(buf, sizeof(buf), "%.17g", values_[i].imag());
    out << ',' << buf << "\n";
  }
}

GridFunction GridFunction::read_csv(std::istream& in) {
  std::string header;
  std::getline(in, header);
  int dim = 0;
  unsigned long long n = 0;
  double length = 0.0;
  if (std::sscanf(header.c_str(), "# d=%d n=%llu L=%lf", &dim, &n, &length) != 3)
    throw std::runtime_error("malformed CSV grid header");
  GridFunction g(dim, std::size_t(n), length);
  std::string row;
  std::size_t count = 0;
  while (std::getline(in, row)) {
    if (row.empty()) continue;
    std::replace(row.begin(), row.end(), ',', ' ');
    std::istringstream fields(row);
    std::size_t i = 0, j = 0;
    double re = 0.0, im = 0.0;
    if (dim == 1)
      fields >> i >> re >> im;
    else {
      fields >> i >> j >> re >> im;
      i = i * std::size_t(n) + j;
    }
    if (!fields) throw std::runtime_error("malformed CSV grid row");
    if (i >= g.size()) throw std::runtime_error("CSV grid index out of range");
    g.values_[i] = {re, im};
    ++count;
  }
  if (count != g.size())
    throw std::runtime_error("CSV grid row count does not match the header");
  return g;
}

}  // namespace levymult
