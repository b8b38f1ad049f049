#include "bmms/partition.hpp"

#include <algorithm>
#include <cmath>

namespace bmms {

double bump(const Space& sp, const Ball& ball, int x) {
  double v = 2.0 - sp.dist(x, ball.center) / ball.radius;
  return std::clamp(v, 0.0, 1.0);
}

double PartitionOfUnity::bump_sum(int x) const {
  double s = 0;
  for (const auto& b : balls) s += bump(*sp, b, x);
  return s;
}

std::vector<double> PartitionOfUnity::evaluate(int x) const {
  std::vector<double> phi(balls.size());
  double s = 0;
  for (size_t k = 0; k < balls.size(); ++k) {
    phi[k] = bump(*sp, balls[k], x);
    s += phi[k];
  }
  if (s == 0)
    throw Error("UncoveredPoint",
                "atom " + std::to_string(x) + " is outside every 2-dilate");
  for (double& v : phi) v /= s;
  return phi;
}

PartitionCheck verify_partition(const PartitionOfUnity& pou,
                                const std::vector<int>& samples) {
  PartitionCheck chk;
  std::vector<std::vector<double>> vals;
  vals.reserve(samples.size());
  for (int x : samples) {
    auto phi = pou.evaluate(x);
    double sum = 0;
    for (size_t k = 0; k < phi.size(); ++k) {
      sum += phi[k];
      if (phi[k] > 0 &&
          !(pou.sp->dist(x, pou.balls[k].center) < 2.0 * pou.balls[k].radius))
        chk.support_exact = false;
    }
    chk.max_sum_deviation = std::max(chk.max_sum_deviation, std::fabs(sum - 1.0));
    vals.push_back(std::move(phi));
  }
  for (size_t a = 0; a < samples.size(); ++a)
    for (size_t b = a + 1; b < samples.size(); ++b) {
      double d = pou.sp->dist(samples[a], samples[b]);
      if (!(d > 0)) continue;
      for (size_t k = 0; k < pou.balls.size(); ++k) {
        double quot =
            std::fabs(vals[a][k] - vals[b][k]) * pou.balls[k].radius / d;
        chk.max_lipschitz_quotient = std::max(chk.max_lipschitz_quotient, quot);
      }
    }
  chk.pass = chk.max_sum_deviation <= 1e-9 && chk.support_exact;
  return chk;
}

}  // namespace bmms
