#include "wcospec/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace wcospec {

namespace {

// FFTW plan creation is not thread-safe; execution with fftw_execute_dft on
// caller-owned arrays is.
std::mutex g_plan_mutex;

fftw_plan plan_for(std::size_t n, int sign) {
  static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<complex> scratch(n);
  auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr, sign, FFTW_ESTIMATE);
  cache.emplace(key, p);
  return p;
}

void run(std::vector<complex>& data, int sign) {
  if (data.empty()) return;
  fftw_plan p = plan_for(data.size(), sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, ptr, ptr);
}

}  // namespace

void fft_forward(std::vector<complex>& data) { run(data, FFTW_FORWARD); }
void fft_backward(std::vector<complex>& data) { run(data, FFTW_BACKWARD); }

std::vector<complex> dft_coefficients(const std::vector<double>& samples) {
  const std::size_t m = samples.size();
  std::vector<complex> buf(m);
  for (std::size_t j = 0; j < m; ++j) buf[j] = samples[j];
  fft_forward(buf);
  const double inv = 1.0 / static_cast<double>(m);
  for (auto& c : buf) c *= inv;
  return buf;
}

std::vector<complex> eval_on_circle_grid(const std::vector<complex>& coeffs, std::size_t m) {
  std::vector<complex> buf(m, complex(0.0, 0.0));
  for (std::size_t k = 0; k < coeffs.size(); ++k) buf[k % m] += coeffs[k];
  fft_backward(buf);
  return buf;
}

std::vector<complex> series_multiply(const std::vector<complex>& a,
                                     const std::vector<complex>& b,
                                     std::size_t n_out) {
  const std::size_t na = std::min(a.size(), n_out + 1);
  const std::size_t nb = std::min(b.size(), n_out + 1);
  if (na == 0 || nb == 0) return std::vector<complex>(n_out + 1, complex(0.0));
  // Direct convolution for short factors, FFT otherwise.
  if (na * nb <= 16384) {
    std::vector<complex> out(n_out + 1, complex(0.0));
    for (std::size_t i = 0; i < na; ++i) {
      const complex ai = a[i];
      if (ai == complex(0.0)) continue;
      const std::size_t jmax = std::min(nb, n_out + 1 - i);
      for (std::size_t j = 0; j < jmax; ++j) out[i + j] += ai * b[j];
    }
    return out;
  }
  std::size_t need = na + nb - 1;
  std::size_t n = 1;
  while (n < need) n <<= 1;
  std::vector<complex> fa(n, complex(0.0)), fb(n, complex(0.0));
  std::copy(a.begin(), a.begin() + na, fa.begin());
  std::copy(b.begin(), b.begin() + nb, fb.begin());
  fft_forward(fa);
  fft_forward(fb);
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  fft_backward(fa);
  const double inv = 1.0 / static_cast<double>(n);
  std::vector<complex> out(n_out + 1, complex(0.0));
  for (std::size_t i = 0; i <= n_out && i < need; ++i) out[i] = fa[i] * inv;
  return out;
}

std::vector<complex> series_exp(const std::vector<complex>& u, std::size_t n_out) {
  std::vector<complex> w(n_out + 1, complex(0.0));
  const complex u0 = u.empty() ? complex(0.0) : u[0];
  w[0] = std::exp(u0);
  const std::size_t udeg = u.empty() ? 0 : u.size() - 1;
  for (std::size_t n = 1; n <= n_out; ++n) {
    complex acc(0.0);
    const std::size_t kmax = std::min(n, udeg);
    for (std::size_t k = 1; k <= kmax; ++k) {
      acc += static_cast<double>(k) * u[k] * w[n - k];
    }
    w[n] = acc / static_cast<double>(n);
  }
  return w;
}

}  // namespace wcospec
