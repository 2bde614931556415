#include "frares/resolvent.hpp"

#include <stdexcept>

#include "frares/errors.hpp"
#include "frares/kernels.hpp"

namespace frares {

CoeffTable::CoeffTable(double alpha, double beta, double tau, std::vector<std::vector<Wide>> rows)
    : alpha_(alpha), beta_(beta), tau_(tau), rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("CoeffTable: no rows");
  for (std::size_t n = 0; n < rows_.size(); ++n) {
    if (rows_[n].size() != n + 1) throw std::invalid_argument("CoeffTable: row n must hold n+1 entries");
  }
}

double CoeffTable::operator()(std::size_t n, std::size_t l) const {
  if (n >= rows_.size() || l < 1 || l > n + 1) return 0.0;
  return static_cast<double>(rows_[n][l - 1]);
}

const Wide& CoeffTable::wide(std::size_t n, std::size_t l) const {
  if (n >= rows_.size() || l < 1 || l > n + 1) {
    throw std::out_of_range("CoeffTable: index outside the triangle");
  }
  return rows_[n][l - 1];
}

Wide CoeffTable::row_sum_wide(std::size_t n) const {
  Wide s = 0;
  for (const auto& a : rows_.at(n)) s += a;
  return s;
}

CoeffTable coeff_table(double alpha, double beta, double tau, std::size_t N) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !(tau > 0.0)) {
    throw DomainError("coeff_table: alpha, beta and tau must be positive");
  }
  const auto ka = kernel_values<Wide>(Wide(alpha), Wide(tau), N);
  const auto kb = kernel_values<Wide>(Wide(beta), Wide(tau), N);
  const Wide inv_k0 = 1 / ka[0];

  std::vector<std::vector<Wide>> a(N + 1);
  for (std::size_t n = 0; n <= N; ++n) a[n].assign(n + 1, Wide(0));
  // a(n, l) with 1-based l
  auto at = [&](std::size_t n, std::size_t l) -> Wide& { return a[n][l - 1]; };

  at(0, 1) = kb[0];
  for (std::size_t n = 1; n <= N; ++n) {
    // First column; for n = 1 this is the value derived in the
    // representation proof, (k^b(1) k^a(0) - k^b(0) k^a(1)) / k^a(0).
    Wide first = kb[n] * ka[0];
    for (std::size_t j = 0; j < n; ++j) first -= ka[n - j] * at(j, 1);
    at(n, 1) = first * inv_k0;

    for (std::size_t l = 2; l <= n; ++l) {
      Wide s = 0;
      for (std::size_t j = l - 2; j < n; ++j) s += ka[n - j] * at(j, l - 1);
      for (std::size_t j = l - 1; j < n; ++j) s -= ka[n - j] * at(j, l);
      at(n, l) = s * inv_k0;
    }

    at(n, n + 1) = ka[1] * at(n - 1, n) * inv_k0;
  }
  return CoeffTable(alpha, beta, tau, std::move(a));
}

}  // namespace frares
