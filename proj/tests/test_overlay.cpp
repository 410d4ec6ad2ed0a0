#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "doctest.h"
#include "qbox/error.hpp"
#include "qbox/overlay.hpp"

using namespace qbox;

namespace {

// first and last k per resonance, preserving emission order
std::map<std::pair<int, int>, std::pair<long long, long long>> k_ranges(
    const std::vector<OverlaySegment>& segs) {
  std::map<std::pair<int, int>, std::pair<long long, long long>> out;
  for (const auto& seg : segs) {
    const auto key = std::make_pair(seg.res.p, seg.res.q);
    auto it = out.find(key);
    if (it == out.end()) {
      out.emplace(key, std::make_pair(seg.k, seg.k));
    } else {
      it->second.first = std::min(it->second.first, seg.k);
      it->second.second = std::max(it->second.second, seg.k);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("no defect yields an empty overlay") {
  CHECK(resonance_overlay(100, 0.0, 0.5).empty());
}

TEST_CASE("overlay content at eps = 0.006 inside the n_max = 100 square") {
  const auto segs = resonance_overlay(100, 0.006, 0.5);
  const auto ranges = k_ranges(segs);

  REQUIRE(ranges.size() == 5);
  REQUIRE(ranges.count({1, 0}) == 1);
  REQUIRE(ranges.count({2, 1}) == 1);
  REQUIRE(ranges.count({3, 2}) == 1);
  REQUIRE(ranges.count({4, 1}) == 1);
  REQUIRE(ranges.count({4, 3}) == 1);

  // entry k solves sqrt(2 eps) k / s^(3/2) = 1/2, exit k is n_max s / p
  CHECK(ranges.at({1, 0}) == std::make_pair(5LL, 100LL));
  CHECK(ranges.at({2, 1}) == std::make_pair(52LL, 250LL));
  CHECK(ranges.at({3, 2}) == std::make_pair(214LL, 433LL));
  CHECK(ranges.at({4, 1}) == std::make_pair(320LL, 425LL));
  CHECK(ranges.at({4, 3}) == std::make_pair(571LL, 625LL));

  // every k in the range is present exactly once
  std::size_t expected = 0;
  for (const auto& [res, kr] : ranges) expected += static_cast<std::size_t>(kr.second - kr.first + 1);
  CHECK(segs.size() == expected);
}

TEST_CASE("only the two lowest bands reach below nbar = 59.3 at eps = 0.006") {
  const auto segs = resonance_overlay(100, 0.006, 0.5);
  for (const auto& seg : segs) {
    const double nbar = seg.k / std::sqrt(static_cast<double>(seg.res.norm2()));
    if (nbar < 59.3) {
      const bool low = (seg.res == Resonance{1, 0}) || (seg.res == Resonance{2, 1});
      CHECK(low);
    }
  }
}

TEST_CASE("the 6:1 band enters at k = 325 for eps = 0.06") {
  const auto ranges = k_ranges(resonance_overlay(100, 0.06, 0.5));
  REQUIRE(ranges.count({6, 1}) == 1);
  CHECK(ranges.at({6, 1}).first == 325);
  CHECK(ranges.at({6, 1}).second == 3700 / 6);
}

TEST_CASE("a larger defect only widens the resonance set") {
  const auto small = k_ranges(resonance_overlay(100, 0.006, 0.5));
  const auto large = k_ranges(resonance_overlay(100, 0.02, 0.5));
  CHECK(large.size() >= small.size());
  for (const auto& [res, kr] : small) {
    REQUIRE(large.count(res) == 1);
    CHECK(large.at(res).first <= kr.first);
    CHECK(large.at(res).second == kr.second);  // exit is geometric, not dynamic
  }
}

TEST_CASE("segment geometry is exact") {
  const auto segs = resonance_overlay(100, 0.02, 0.5);
  REQUIRE(!segs.empty());
  for (std::size_t i = 0; i < segs.size(); i += 7) {
    const auto& seg = segs[i];
    const double s = static_cast<double>(seg.res.norm2());
    const double nbar = seg.k / std::sqrt(s);

    // claimed half-width matches the closed form and passes selection
    CHECK(seg.m_max == doctest::Approx(std::sqrt(2.0 * 0.02) * nbar / s).epsilon(1e-12));
    CHECK(seg.m_max >= 0.5);

    // both endpoints stay on the line q n1 + p n2 = k
    CHECK(seg.res.q * seg.n1_start + seg.res.p * seg.n2_start ==
          doctest::Approx(static_cast<double>(seg.k)).epsilon(1e-12));
    CHECK(seg.res.q * seg.n1_end + seg.res.p * seg.n2_end ==
          doctest::Approx(static_cast<double>(seg.k)).epsilon(1e-12));

    // midpoint sits on the ray n2 / n1 = p / q
    const double mid1 = 0.5 * (seg.n1_start + seg.n1_end);
    const double mid2 = 0.5 * (seg.n2_start + seg.n2_end);
    CHECK(seg.res.p * mid1 - seg.res.q * mid2 == doctest::Approx(0.0).epsilon(1e-9));

    // length is 2 m_max sqrt(s), oriented with n1 increasing
    const double len = std::hypot(seg.n1_end - seg.n1_start, seg.n2_end - seg.n2_start);
    CHECK(len == doctest::Approx(2.0 * seg.m_max * std::sqrt(s)).epsilon(1e-12));
    CHECK(seg.n1_start < seg.n1_end);
  }
}

TEST_CASE("overlay inputs are validated") {
  CHECK_THROWS_AS((void)resonance_overlay(1, 0.02, 0.5), Error);
  CHECK_THROWS_AS((void)resonance_overlay(100, -0.1, 0.5), Error);
  CHECK_THROWS_AS((void)resonance_overlay(100, 1.0, 0.5), Error);
  CHECK_THROWS_AS((void)resonance_overlay(100, 0.02, 0.0), Error);
}
