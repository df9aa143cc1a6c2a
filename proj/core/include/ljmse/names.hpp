#pragma once

#include <cstdint>
#include <set>
#include <string>

namespace ljmse {

using Name = std::string;

// Deterministic fresh-name source. Names are drawn as prefix, prefix1,
// prefix2, ... skipping anything in the used set; every generated name is
// added to the used set, so a supply never hands out the same name twice.
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(std::set<Name> used) : used_(std::move(used)) {}

  void reserve(const Name& n) { used_.insert(n); }
  void reserve(const std::set<Name>& ns) { used_.insert(ns.begin(), ns.end()); }

  Name fresh(const std::string& prefix);

 private:
  std::set<Name> used_;
};

// SplitMix64: tiny, portable, fully specified PRNG. Standard-library
// distributions are not bit-stable across implementations, so all random
// draws in the workbench go through this.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // uniform in [0, n), n > 0
  std::uint64_t below(std::uint64_t n);
  // uniform in [lo, hi] inclusive
  int range(int lo, int hi);
  bool chance(std::uint32_t num, std::uint32_t den);
  // split off an independent stream (for per-case determinism)
  Rng fork(std::uint64_t salt);

 private:
  std::uint64_t state_;
};

}  // namespace ljmse
