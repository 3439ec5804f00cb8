#include "veronese/counting.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <set>

#include "veronese/errors.hpp"
#include "veronese/parallel.hpp"

namespace veronese {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_budget(long long height, const CountOptions& options) {
  if (height < 1) throw InvalidInput("height must be >= 1");
  const double cells = count_cells(height);
  if (cells > options.budget) throw BudgetExceeded("enumeration exceeds the work budget", cells, options.budget);
}

// Bucket counts for one (c3, c2) slice: bucket[k] counts cubics with
// caps[k-1] < |D| <= caps[k].
template <class I>
void count_slice(long long c3, long long c2, long long H, const std::vector<long long>& caps,
                 std::vector<std::uint64_t>& bucket) {
  const I top = static_cast<I>(caps.back());
  const I C = I(-27) * c3 * c3;
  for (long long c1 = -H; c1 <= H; ++c1) {
    const I A = I(c1) * c1 * c2 * c2 - I(4) * c1 * c1 * c1 * c3;
    const I B = I(-4) * c2 * c2 * c2 + I(18) * c1 * c2 * c3;
    for (long long c0 = -H; c0 <= H; ++c0) {
      I d = A + I(c0) * (B + C * c0);
      if (d < 0) d = -d;
      if (d == 0 || d > top) continue;
      std::size_t k = 0;
      while (static_cast<I>(caps[k]) < d) ++k;
      ++bucket[k];
    }
  }
}

void count_slice_big(long long c3, long long c2, long long H, const std::vector<long long>& caps,
                     std::vector<std::uint64_t>& bucket) {
  for (long long c1 = -H; c1 <= H; ++c1)
    for (long long c0 = -H; c0 <= H; ++c0) {
      BigInt d = abs(cubic_discriminant(c0, c1, c2, c3));
      if (d == 0 || d > caps.back()) continue;
      std::size_t k = 0;
      while (BigInt(caps[k]) < d) ++k;
      ++bucket[k];
    }
}

std::vector<long long> sorted_caps(const std::vector<long long>& disc_caps) {
  if (disc_caps.empty()) throw InvalidInput("at least one discriminant cap is required");
  std::vector<long long> caps;
  for (long long d : disc_caps)
    if (d > 0) caps.push_back(d);
  std::sort(caps.begin(), caps.end());
  caps.erase(std::unique(caps.begin(), caps.end()), caps.end());
  return caps;
}

std::vector<CountRecord> records_for(long long height, const std::vector<long long>& disc_caps,
                                     const std::vector<long long>& caps, const std::vector<std::uint64_t>& cumulative,
                                     int symmetry, double wall) {
  std::vector<CountRecord> out;
  for (long long d : disc_caps) {
    CountRecord r;
    r.height = height;
    r.disc_cap = d;
    r.symmetry_factor = symmetry;
    r.wall_time = wall;
    auto it = std::upper_bound(caps.begin(), caps.end(), d);
    if (it != caps.begin()) r.count = cumulative[static_cast<std::size_t>(it - caps.begin()) - 1];
    out.push_back(r);
  }
  return out;
}

long long disc64(long long c0, long long c1, long long c2, long long c3) {
  return c1 * c1 * c2 * c2 - 4 * c0 * c2 * c2 * c2 - 4 * c1 * c1 * c1 * c3 - 27 * c0 * c0 * c3 * c3 +
         18 * c0 * c1 * c2 * c3;
}

}  // namespace

double count_cells(long long height) {
  const double side = 2.0 * static_cast<double>(height) + 1.0;
  return side * side * side * side;
}

std::vector<CountRecord> count_nhd_grid(long long height, const std::vector<long long>& disc_caps,
                                        const CountOptions& options) {
  check_budget(height, options);
  const auto t0 = Clock::now();
  const auto caps = sorted_caps(disc_caps);
  if (caps.empty()) return records_for(height, disc_caps, caps, {}, 4, seconds_since(t0));

  const long long H = height;
  const std::size_t slices = static_cast<std::size_t>(H) * static_cast<std::size_t>(H + 1);
  std::vector<std::vector<std::uint64_t>> buckets(slices, std::vector<std::uint64_t>(caps.size(), 0));
  parallel_for(slices, options.threads, [&](std::size_t idx) {
    const long long c3 = static_cast<long long>(idx) / (H + 1) + 1;
    const long long c2 = static_cast<long long>(idx) % (H + 1);
    if (H <= 20000) {
      count_slice<long long>(c3, c2, H, caps, buckets[idx]);
    } else if (H <= (1LL << 28)) {
      count_slice<__int128>(c3, c2, H, caps, buckets[idx]);
    } else {
      count_slice_big(c3, c2, H, caps, buckets[idx]);
    }
  });

  // P -> -P doubles every slice; x -> -x then P -> -P pairs c2 with -c2.
  std::vector<std::uint64_t> cumulative(caps.size(), 0);
  for (std::size_t idx = 0; idx < slices; ++idx) {
    const long long c2 = static_cast<long long>(idx) % (H + 1);
    const std::uint64_t weight = c2 == 0 ? 2 : 4;
    for (std::size_t k = 0; k < caps.size(); ++k) cumulative[k] += weight * buckets[idx][k];
  }
  for (std::size_t k = 1; k < caps.size(); ++k) cumulative[k] += cumulative[k - 1];
  return records_for(height, disc_caps, caps, cumulative, 4, seconds_since(t0));
}

CountRecord count_nhd(long long height, long long disc_cap, const CountOptions& options) {
  return count_nhd_grid(height, {disc_cap}, options).front();
}

std::vector<CountRecord> count_nhd_naive(long long height, const std::vector<long long>& disc_caps,
                                         const CountOptions& options) {
  check_budget(height, options);
  const auto t0 = Clock::now();
  const auto caps = sorted_caps(disc_caps);
  const long long H = height;
  std::vector<std::vector<std::uint64_t>> per_c3(static_cast<std::size_t>(2 * H + 1),
                                                 std::vector<std::uint64_t>(caps.size(), 0));
  if (!caps.empty()) {
    parallel_for(per_c3.size(), options.threads, [&](std::size_t idx) {
      const long long c3 = static_cast<long long>(idx) - H;
      if (c3 == 0) return;
      for (long long c2 = -H; c2 <= H; ++c2)
        for (long long c1 = -H; c1 <= H; ++c1)
          for (long long c0 = -H; c0 <= H; ++c0) {
            BigInt d = abs(discriminant(IntPoly{c0, c1, c2, c3}));
            if (d == 0) continue;
            for (std::size_t k = 0; k < caps.size(); ++k)
              if (d <= caps[k]) ++per_c3[idx][k];
          }
    });
  }
  std::vector<std::uint64_t> cumulative(caps.size(), 0);
  for (const auto& row : per_c3)
    for (std::size_t k = 0; k < caps.size(); ++k) cumulative[k] += row[k];
  return records_for(height, disc_caps, caps, cumulative, 1, seconds_since(t0));
}

EquivalentCount count_equivalents(const IntPoly& p, long long height, const CountOptions& options,
                                  const std::vector<int>& entry_bounds) {
  if (p.is_zero() || p.degree() > 3) throw InvalidInput("count_equivalents: p must be a nonzero cubic form");
  if (entry_bounds.empty()) throw InvalidInput("count_equivalents: entry bounds must be nonempty");
  check_budget(height, options);
  const BigInt target = form_discriminant(p, 3);
  const long long H = height;
  EquivalentCount result;
  result.final_entry_bound = entry_bounds.front();
  // |D| <= 54 H^4 for every cubic of height <= H.
  if (abs(target) > BigInt(54) * ipow(BigInt(H), 4u)) return result;
  if (H > 20000) throw InvalidInput("count_equivalents: height too large");
  const long long d = static_cast<long long>(target);

  std::vector<std::vector<IntPoly>> found(static_cast<std::size_t>(2 * H + 1));
  parallel_for(found.size(), options.threads, [&](std::size_t idx) {
    const long long c3 = static_cast<long long>(idx) - H;
    if (c3 == 0) return;
    for (long long c2 = -H; c2 <= H; ++c2)
      for (long long c1 = -H; c1 <= H; ++c1)
        for (long long c0 = -H; c0 <= H; ++c0)
          if (disc64(c0, c1, c2, c3) == d) found[idx].push_back(IntPoly{c0, c1, c2, c3});
  });

  const IntPoly base = reduce_min_hd(p).representative;
  std::map<std::vector<BigInt>, Verdict> verdicts;
  int largest_bound = entry_bounds.front();
  for (const auto& slice : found)
    for (const auto& q : slice) {
      const IntPoly rep = reduce_min_hd(q).representative;
      auto [it, inserted] = verdicts.try_emplace(rep.coeffs(), Verdict::unknown);
      if (inserted) {
        if (rep == base) {
          it->second = Verdict::equivalent;
        } else {
          for (int bound : entry_bounds) {
            largest_bound = std::max(largest_bound, bound);
            it->second = equivalent(base, rep, bound).verdict;
            if (it->second != Verdict::unknown) break;
          }
        }
      }
      switch (it->second) {
        case Verdict::equivalent: ++result.confirmed; break;
        case Verdict::not_equivalent: ++result.rejected; break;
        case Verdict::unknown: ++result.unknown; break;
      }
    }
  result.final_entry_bound = largest_bound;
  return result;
}

ExponentFit fit_exponents(const std::vector<CountRecord>& records) {
  std::map<long long, std::set<long long>> heights_at_cap, caps_at_height;
  std::vector<std::array<double, 3>> rows;
  std::vector<double> rhs;
  for (const auto& r : records) {
    if (r.count == 0 || r.height < 1 || r.disc_cap < 1) continue;
    heights_at_cap[r.disc_cap].insert(r.height);
    caps_at_height[r.height].insert(r.disc_cap);
    rows.push_back({1.0, std::log(static_cast<double>(r.height)), std::log(static_cast<double>(r.disc_cap))});
    rhs.push_back(std::log(static_cast<double>(r.count)));
  }
  auto spread = [](const auto& m) {
    for (const auto& [k, s] : m)
      if (s.size() >= 3) return true;
    return false;
  };
  if (!spread(heights_at_cap) || !spread(caps_at_height))
    throw InvalidInput("fit_exponents: need three heights at one cap and three caps at one height");

  long double a[3][4] = {};
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a[i][j] += static_cast<long double>(rows[r][static_cast<std::size_t>(i)]) * rows[r][static_cast<std::size_t>(j)];
      a[i][3] += static_cast<long double>(rows[r][static_cast<std::size_t>(i)]) * rhs[r];
    }
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    if (std::fabs(a[piv][c]) < 1e-12L) throw InvalidInput("fit_exponents: singular design");
    for (int j = 0; j < 4; ++j) std::swap(a[c][j], a[piv][j]);
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      long double f = a[r][c] / a[c][c];
      for (int j = c; j < 4; ++j) a[r][j] -= f * a[c][j];
    }
  }
  ExponentFit fit;
  fit.constant = std::exp(static_cast<double>(a[0][3] / a[0][0]));
  fit.alpha_h = static_cast<double>(a[1][3] / a[1][1]);
  fit.alpha_d = static_cast<double>(a[2][3] / a[2][2]);
  return fit;
}

}  // namespace veronese
