#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "rqi/kernels.hpp"

using namespace rqi;

namespace {

std::vector<Complex> random_plane(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d(0, 1);
  std::vector<Complex> x(n);
  for (auto& z : x) z = Complex(d(rng), d(rng));
  return x;
}

std::vector<double> random_weights(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::vector<double> w(n);
  for (auto& x : w) x = u(rng);
  return w;
}

double max_rel(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double scale = 0, diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    scale = std::max(scale, std::abs(a[i]));
    diff = std::max(diff, std::abs(a[i] - b[i]));
  }
  return diff / std::max(scale, 1e-300);
}

}  // namespace

TEST_CASE("scalar gram matches a direct sum") {
  std::mt19937_64 rng(11);
  const std::size_t n = 37;
  auto x0 = random_plane(n, rng), x1 = random_plane(n, rng), x2 = random_plane(n, rng);
  auto w = random_weights(n, rng);
  const std::array<const Complex*, 3> planes{x0.data(), x1.data(), x2.data()};
  std::vector<Complex> out(9, Complex(0));
  kernels::scalar::hermitian_gram(planes, w.data(), n, 0.5, out.data());
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Complex ref = 0;
      for (std::size_t l = 0; l < n; ++l) ref += w[l] * planes[a][l] * std::conj(planes[b][l]);
      CHECK(std::abs(out[3 * a + b] - 0.5 * ref) < 1e-12);
    }
}

TEST_CASE("scalar apply_2x2 matches matrix products") {
  std::mt19937_64 rng(12);
  const std::size_t n = 9;
  auto x0 = random_plane(n, rng), x1 = random_plane(n, rng);
  auto mats = random_plane(4 * n, rng);
  auto y0 = x0, y1 = x1;
  kernels::scalar::apply_2x2(mats.data(), 1, y0.data(), y1.data(), n);
  for (std::size_t l = 0; l < n; ++l) {
    const Complex* m = mats.data() + 4 * l;
    CHECK(std::abs(y0[l] - (m[0] * x0[l] + m[1] * x1[l])) < 1e-13);
    CHECK(std::abs(y1[l] - (m[2] * x0[l] + m[3] * x1[l])) < 1e-13);
  }
}

#if defined(RQI_HAVE_AVX2)
TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!kernels::avx2_available()) SKIP("AVX2 not available on this CPU");
  std::mt19937_64 rng(13);
  for (std::size_t n : {0, 1, 2, 3, 7, 64, 1001}) {
    auto x0 = random_plane(n, rng), x1 = random_plane(n, rng), x2 = random_plane(n, rng),
         x3 = random_plane(n, rng);
    auto w = random_weights(n, rng);
    const std::array<const Complex*, 4> planes{x0.data(), x1.data(), x2.data(), x3.data()};
    for (const double* weights : {static_cast<const double*>(w.data()), static_cast<const double*>(nullptr)}) {
      std::vector<Complex> ref(16, Complex(0.25, -0.5)), got = ref;
      kernels::scalar::hermitian_gram(planes, weights, n, 1.5, ref.data());
      kernels::avx2::hermitian_gram(planes, weights, n, 1.5, got.data());
      CHECK(max_rel(ref, got) < 1e-13);
      for (int a = 0; a < 4; ++a) CHECK(got[5 * a].imag() == ref[5 * a].imag());
    }

    auto mats = random_plane(4 * n + 4, rng);
    for (std::size_t stride : {0, 1}) {
      auto r0 = x0, r1 = x1, g0 = x0, g1 = x1;
      kernels::scalar::apply_2x2(mats.data(), stride, r0.data(), r1.data(), n);
      kernels::avx2::apply_2x2(mats.data(), stride, g0.data(), g1.data(), n);
      if (n > 0) {
        CHECK(max_rel(r0, g0) < 1e-14);
        CHECK(max_rel(r1, g1) < 1e-14);
      }
    }
  }
}
#endif

TEST_CASE("dispatch selects a backend consistent with the CPU") {
  const auto b = kernels::active_backend();
  if (!kernels::avx2_available()) CHECK(b == kernels::Backend::scalar);
  CHECK((std::string(kernels::to_string(b)) == "avx2" || std::string(kernels::to_string(b)) == "scalar"));
}

TEST_CASE("dispatched gram is reproducible run to run") {
  std::mt19937_64 rng(14);
  const std::size_t n = 513;
  auto x0 = random_plane(n, rng), x1 = random_plane(n, rng);
  auto w = random_weights(n, rng);
  const std::array<const Complex*, 2> planes{x0.data(), x1.data()};
  std::vector<Complex> a(4), b(4);
  kernels::hermitian_gram(planes, w.data(), n, 1.0, a.data());
  kernels::hermitian_gram(planes, w.data(), n, 1.0, b.data());
  CHECK(a == b);
}
