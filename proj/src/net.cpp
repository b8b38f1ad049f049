#include "bmms/net.hpp"

namespace bmms {

namespace {

void greedy_extend(const MeasuredSubset& ground, double separation,
                   std::vector<int>& members, std::vector<char>& in_net,
                   int first_candidate) {
  int n = ground.size();
  for (int cand = first_candidate; cand < n; ++cand) {
    if (in_net[cand]) continue;
    bool ok = true;
    for (int m : members)
      if (ground.dist(cand, m) < separation) {
        ok = false;
        break;
      }
    if (ok) {
      members.push_back(cand);
      in_net[cand] = 1;
    }
  }
}

}  // namespace

SeparatedNet maximal_separated_net(const MeasuredSubset& ground,
                                   double separation, int seed) {
  if (!(separation > 0)) throw Error("BadParams", "separation must be positive");
  if (seed < 0 || seed >= ground.size())
    throw Error("BadParams", "net seed out of range");
  SeparatedNet net;
  net.separation = separation;
  std::vector<char> in_net(ground.size(), 0);
  net.members.push_back(seed);
  in_net[seed] = 1;
  greedy_extend(ground, separation, net.members, in_net, 0);
  return net;
}

SeparatedNet maximal_separated_net_seeded(const MeasuredSubset& ground,
                                          double separation,
                                          const std::vector<int>& initial) {
  if (!(separation > 0)) throw Error("BadParams", "separation must be positive");
  SeparatedNet net;
  net.separation = separation;
  std::vector<char> in_net(ground.size(), 0);
  for (int m : initial) {
    if (m < 0 || m >= ground.size())
      throw Error("BadParams", "net seed out of range");
    if (!in_net[m]) {
      net.members.push_back(m);
      in_net[m] = 1;
    }
  }
  for (size_t a = 0; a < net.members.size(); ++a)
    for (size_t b = a + 1; b < net.members.size(); ++b)
      if (ground.dist(net.members[a], net.members[b]) < separation)
        throw Error("BadParams", "initial net members are not separated");
  greedy_extend(ground, separation, net.members, in_net, 0);
  return net;
}

bool verify_net(const MeasuredSubset& ground, const SeparatedNet& net) {
  for (size_t a = 0; a < net.members.size(); ++a)
    for (size_t b = a + 1; b < net.members.size(); ++b)
      if (ground.dist(net.members[a], net.members[b]) < net.separation)
        return false;
  for (int p = 0; p < ground.size(); ++p) {
    bool covered = false;
    for (int m : net.members)
      if (ground.dist(p, m) < net.separation) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

}  // namespace bmms
