#include "ljmse/names.hpp"

namespace ljmse {

Name NameSupply::fresh(const std::string& prefix) {
  if (!used_.count(prefix)) {
    used_.insert(prefix);
    return prefix;
  }
  for (int i = 1;; ++i) {
    Name cand = prefix + std::to_string(i);
    if (!used_.count(cand)) {
      used_.insert(cand);
      return cand;
    }
  }
}

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
  // multiply-shift reduction; bias is negligible for our n and keeps the
  // draw sequence identical everywhere
  __uint128_t wide = static_cast<__uint128_t>(next()) * n;
  return static_cast<std::uint64_t>(wide >> 64);
}

int Rng::range(int lo, int hi) {
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

bool Rng::chance(std::uint32_t num, std::uint32_t den) {
  return below(den) < num;
}

Rng Rng::fork(std::uint64_t salt) {
  Rng child(state_ ^ (salt * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
  child.next();
  return child;
}

}  // namespace ljmse
