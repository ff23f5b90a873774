#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "sigenum/core.hpp"

namespace sigenum {

/// Identifies one reproducible random stream: a pure function of both fields.
struct SeedPolicy {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

/// Standard normal variates from mt19937_64 through the Box-Muller
/// transform. Each (master_seed, trial_index) pair maps to its own engine seed
/// via splitmix64 mixing, so streams never share state.
class NormalStream {
 public:
  explicit NormalStream(SeedPolicy seed);

  double next();

 private:
  double uniform_open();  // (0, 1]
  double uniform();       // [0, 1)

  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

std::vector<double> standard_gaussian_stream(SeedPolicy seed, std::size_t count);

/// n x m data matrix X = [x_1 | ... | x_m], stored row-major. Complex matrices
/// keep a parallel imaginary plane; it is empty for real data.
class SnapshotMatrix {
 public:
  SnapshotMatrix(int n, int m, Field field);

  int n() const { return n_; }
  int m() const { return m_; }
  Field field() const { return field_; }
  bool is_complex() const { return field_ == Field::kComplex; }

  double& re(int row, int col) { return re_[index(row, col)]; }
  double re(int row, int col) const { return re_[index(row, col)]; }
  double& im(int row, int col) { return im_[index(row, col)]; }
  double im(int row, int col) const { return is_complex() ? im_[index(row, col)] : 0.0; }
  std::complex<double> at(int row, int col) const { return {re(row, col), im(row, col)}; }

  const std::vector<double>& real_plane() const { return re_; }
  const std::vector<double>& imag_plane() const { return im_; }

  friend bool operator==(const SnapshotMatrix&, const SnapshotMatrix&) = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(m_) +
           static_cast<std::size_t>(col);
  }

  int n_;
  int m_;
  Field field_;
  std::vector<double> re_;
  std::vector<double> im_;
};

/// Draws m i.i.d. snapshots from N_n(0, R) with R = diag(l1..lk, s2..s2).
/// Complex entries use CN(0, v): independent real/imaginary parts of variance v/2.
/// Throws UnsupportedField for quaternion scenarios.
SnapshotMatrix generate_snapshots(const ScenarioSpec& spec, SeedPolicy seed);

}  // namespace sigenum
