#include "w11tools/fixtures.hpp"

namespace w11tools {

namespace {

CorpusSpec spec(Family f, const char* manifold, int d, long n, double h, std::uint64_t seed) {
  CorpusSpec s;
  s.family = f;
  s.manifold = manifold;
  s.d = d;
  s.n = n;
  s.h = h;
  s.seed = seed;
  return s;
}

std::string label(const CorpusSpec& s) {
  return std::string(to_string(s.family)) + "/" + s.manifold + "/d" + std::to_string(s.d);
}

}  // namespace

std::vector<Fixture> energy_fixtures(std::uint64_t seed) {
  const std::vector<CorpusSpec> specs = {
      spec(Family::SingleBump, "circle", 1, 16, 0.125, seed + 1),
      spec(Family::MultiBump, "sphere:3", 1, 16, 0.125, seed + 2),
      spec(Family::SmoothSampled, "sphere:3", 1, 16, 0.125, seed + 3),
      spec(Family::MultiBump, "circle", 2, 16, 0.125, seed + 4),
      spec(Family::SingleBump, "sphere:3", 2, 16, 0.125, seed + 5),
  };
  std::vector<Fixture> out;
  for (const auto& s : specs) out.push_back({label(s), generate(s)});
  return out;
}

std::vector<Fixture> energy_fixtures_with_step(std::uint64_t seed) {
  auto out = energy_fixtures(seed);
  const auto s = spec(Family::TwoValuedStep, "sphere:3", 1, 16, 0.125, seed + 6);
  out.push_back({label(s), generate(s)});
  return out;
}

std::vector<FixturePair> extension_fixtures(std::uint64_t seed) {
  struct Row {
    Family f0, f1;
    const char* manifold;
    int d;
  };
  const std::vector<Row> rows = {
      {Family::SingleBump, Family::MultiBump, "circle", 1},
      {Family::SmoothSampled, Family::SingleBump, "sphere:3", 1},
      {Family::MultiBump, Family::Constant, "sphere:3", 1},
      {Family::TwoValuedStep, Family::SmoothSampled, "sphere:3", 1},
      {Family::SingleBump, Family::MultiBump, "sphere:3", 2},
      {Family::SmoothSampled, Family::SingleBump, "circle", 2},
      {Family::Constant, Family::Constant, "sphere:3", 2},
  };
  std::vector<FixturePair> out;
  std::uint64_t k = 100;
  for (const auto& r : rows) {
    const long n = r.d == 1 ? 16 : 8;
    const double h = r.d == 1 ? 0.125 : 0.25;
    const auto s0 = spec(r.f0, r.manifold, r.d, n, h, seed + k++);
    const auto s1 = spec(r.f1, r.manifold, r.d, n, h, seed + k++);
    out.push_back({label(s0) + " | " + label(s1), generate(s0), generate(s1), h / 8.0});
  }
  return out;
}

}  // namespace w11tools
