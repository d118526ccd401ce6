#include <doctest.h>

#include <w11/error.hpp>
#include <w11/io.hpp>
#include <w11tools/corpus.hpp>

using w11tools::CorpusSpec;
using w11tools::Family;

namespace {

/// Connected components of non-tail cells (axis neighbours).
int regions(const w11::GridMap& u) {
  const auto& g = u.geometry();
  const auto& m = u.manifold();
  std::vector<int> label(g.cell_count(), -1);
  int count = 0;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    if (label[c] >= 0 || m.dist(u.value(c), u.tail()) == 0.0) continue;
    std::vector<std::size_t> stack{c};
    label[c] = count;
    while (!stack.empty()) {
      const auto cur = stack.back();
      stack.pop_back();
      const auto idx = g.unravel(cur);
      for (int j = 0; j < g.dim(); ++j) {
        for (long step : {-1L, 1L}) {
          auto nb = idx;
          nb[j] += step;
          if (nb[j] < 0 || nb[j] >= g.counts[j]) continue;
          const auto f = g.ravel(nb);
          if (label[f] >= 0 || m.dist(u.value(f), u.tail()) == 0.0) continue;
          label[f] = count;
          stack.push_back(f);
        }
      }
    }
    ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("constant family is the tail everywhere") {
  CorpusSpec spec;
  spec.family = Family::Constant;
  const auto u = w11tools::generate(spec);
  for (std::size_t c = 0; c < u.cell_count(); ++c) CHECK(u.manifold().dist(u.value(c), u.tail()) == 0.0);
}

TEST_CASE("same seed gives identical files") {
  for (Family f : {Family::SingleBump, Family::MultiBump, Family::SmoothSampled, Family::TwoValuedStep}) {
    CorpusSpec spec;
    spec.family = f;
    spec.d = 2;
    spec.seed = 7;
    CHECK(w11::format_grid_map(w11tools::generate(spec)) == w11::format_grid_map(w11tools::generate(spec)));
  }
}

TEST_CASE("multi-bump has exactly the requested number of disjoint regions") {
  for (int d : {1, 2}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      CorpusSpec spec;
      spec.family = Family::MultiBump;
      spec.d = d;
      spec.n = 32;
      spec.bumps = 3;
      spec.seed = seed;
      CAPTURE(d);
      CAPTURE(seed);
      CHECK(regions(w11tools::generate(spec)) == 3);
    }
  }
}

TEST_CASE("family names round trip; unknown names are usage errors") {
  for (Family f : {Family::Constant, Family::SingleBump, Family::MultiBump, Family::SmoothSampled,
                   Family::TwoValuedStep}) {
    CHECK(w11tools::parse_family(w11tools::to_string(f)) == f);
  }
  CHECK_THROWS_AS(w11tools::parse_family("zigzag"), w11::UsageError);
}

TEST_CASE("every family lands on the manifold for each target") {
  for (const char* id : {"circle", "sphere:3", "euclidean:2"}) {
    for (Family f : {Family::SingleBump, Family::MultiBump, Family::SmoothSampled, Family::TwoValuedStep}) {
      CorpusSpec spec;
      spec.family = f;
      spec.manifold = id;
      const auto u = w11tools::generate(spec);
      for (std::size_t c = 0; c < u.cell_count(); ++c) CHECK(u.manifold().contains(u.value(c)));
    }
  }
}
