#ifndef MODKIT_RANDOM_HPP
#define MODKIT_RANDOM_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace modkit {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-trial stream: independent of the order in which trials are executed.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t counter) {
  return splitmix64(splitmix64(master) ^ splitmix64(counter + 0x632be59bd9b4e019ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  Rng split(std::uint64_t counter) const { return Rng(trial_seed(seed_, counter)); }

  double normal() { return normal_(eng_); }
  double uniform(double a = 0.0, double b = 1.0) {
    return a + (b - a) * std::generate_canonical<double, 53>(eng_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  std::complex<double> cnormal() { return {normal() / std::sqrt(2.0), normal() / std::sqrt(2.0)}; }

  Eigen::VectorXd normal_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
  }
  Eigen::MatrixXd normal_matrix(int r, int c) {
    Eigen::MatrixXd m(r, c);
    for (int j = 0; j < c; ++j)
      for (int i = 0; i < r; ++i) m(i, j) = normal();
    return m;
  }
  Eigen::VectorXcd complex_vector(int n) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = cnormal();
    return v;
  }
  Eigen::MatrixXcd complex_matrix(int r, int c) {
    Eigen::MatrixXcd m(r, c);
    for (int j = 0; j < c; ++j)
      for (int i = 0; i < r; ++i) m(i, j) = cnormal();
    return m;
  }
  Eigen::MatrixXcd unitary(int n) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(complex_matrix(n, n));
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
      const std::complex<double> z = r(i, i);
      if (std::abs(z) > 0) q.col(i) *= z / std::abs(z);
    }
    return q;
  }
  Eigen::MatrixXd orthogonal(int n) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(normal_matrix(n, n));
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i)
      if (r(i, i) < 0) q.col(i) *= -1.0;
    return q;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace modkit

#endif
