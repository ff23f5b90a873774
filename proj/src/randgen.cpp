#include "sigenum/randgen.hpp"

#include <cmath>
#include <numbers>

namespace sigenum {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t engine_seed(SeedPolicy seed) {
  return splitmix64(seed.master_seed ^ splitmix64(seed.trial_index ^ 0x243f6a8885a308d3ULL));
}

}  // namespace

NormalStream::NormalStream(SeedPolicy seed) : engine_(engine_seed(seed)) {}

double NormalStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NormalStream::uniform_open() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double NormalStream::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

std::vector<double> standard_gaussian_stream(SeedPolicy seed, std::size_t count) {
  NormalStream stream(seed);
  std::vector<double> out(count);
  for (double& v : out) v = stream.next();
  return out;
}

SnapshotMatrix::SnapshotMatrix(int n, int m, Field field) : n_(n), m_(m), field_(field) {
  if (n < 1 || m < 1) throw DomainError("snapshot matrix dimensions must be positive");
  if (field == Field::kQuaternion)
    throw UnsupportedField("quaternion snapshot matrices are not supported");
  const auto size = static_cast<std::size_t>(n) * static_cast<std::size_t>(m);
  re_.assign(size, 0.0);
  if (field == Field::kComplex) im_.assign(size, 0.0);
}

SnapshotMatrix generate_snapshots(const ScenarioSpec& spec, SeedPolicy seed) {
  if (spec.field() == Field::kQuaternion)
    throw UnsupportedField("snapshot generation supports beta = 1 or 2 only");

  SnapshotMatrix x(spec.n(), spec.m(), spec.field());
  NormalStream stream(seed);
  const bool complex = x.is_complex();
  for (int i = 0; i < spec.n(); ++i) {
    // Complex entries split the variance evenly between real and imaginary parts.
    const double scale = std::sqrt(spec.population_eigenvalue(i) / (complex ? 2.0 : 1.0));
    for (int j = 0; j < spec.m(); ++j) {
      x.re(i, j) = scale * stream.next();
      if (complex) x.im(i, j) = scale * stream.next();
    }
  }
  return x;
}

}  // namespace sigenum
