#include "taut/integrals.hpp"
#include "taut/bernoulli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace taut {

namespace {

std::mutex memo_mutex;
std::map<std::string, Rat> memo;  // shared by all integral kinds

std::string join(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

bool memo_get(const std::string& key, Rat& out) {
  std::lock_guard<std::mutex> lock(memo_mutex);
  auto it = memo.find(key);
  if (it == memo.end()) return false;
  out = it->second;
  return true;
}

void memo_put(const std::string& key, const Rat& val) {
  std::lock_guard<std::mutex> lock(memo_mutex);
  memo.emplace(key, val);
}

Rat psi_rec(int g, std::vector<int> ks);

// All ordered ways to split a multiset of marking exponents in two.
void subset_split(const std::vector<int>& ks,
                  const std::function<void(const std::vector<int>&,
                                           const std::vector<int>&)>& fn) {
  const int n = static_cast<int>(ks.size());
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> in, out;
    for (int i = 0; i < n; ++i)
      (mask & (1 << i) ? in : out).push_back(ks[i]);
    fn(in, out);
  }
}

Rat psi_rec(int g, std::vector<int> ks) {
  const int n = static_cast<int>(ks.size());
  if (g < 0) return Rat(0);
  for (int k : ks)
    if (k < 0) return Rat(0);
  if (2 * g - 2 + n <= 0) return Rat(0);
  long total = std::accumulate(ks.begin(), ks.end(), 0L);
  if (total != 3L * g - 3 + n) return Rat(0);
  if (g == 0 && n == 3) return Rat(1);
  if (g == 1 && n == 1) return Rat(1, 24);  // ks = {1} by the dimension check

  std::sort(ks.begin(), ks.end());
  std::string key = "psi|" + std::to_string(g) + "|" + join(ks);
  Rat cached;
  if (memo_get(key, cached)) return cached;

  Rat result(0);
  if (ks.front() == 0) {
    // string equation
    std::vector<int> rest(ks.begin() + 1, ks.end());
    for (size_t j = 0; j < rest.size(); ++j) {
      if (rest[j] == 0) continue;
      std::vector<int> next = rest;
      next[j] -= 1;
      result += psi_rec(g, next);
    }
  } else if (ks.front() == 1) {
    // dilaton equation
    std::vector<int> rest(ks.begin() + 1, ks.end());
    result = Rat(2 * g - 2 + static_cast<int>(rest.size())) * psi_rec(g, rest);
  } else {
    // KdV recursion on the largest exponent
    const int k1 = ks.back();
    std::vector<int> rest(ks.begin(), ks.end() - 1);
    Rat sum(0);
    for (size_t j = 0; j < rest.size(); ++j) {
      std::vector<int> next = rest;
      next.erase(next.begin() + j);
      next.push_back(k1 + rest[j] - 1);
      sum += Rat(double_factorial(2 * (k1 + rest[j]) - 1)) /
             Rat(double_factorial(2 * rest[j] - 1)) * psi_rec(g, next);
    }
    Rat half_sum(0);
    for (int a = 0; a + 2 <= k1; ++a) {
      const int b = k1 - 2 - a;
      Rat w = Rat(double_factorial(2 * a + 1)) * Rat(double_factorial(2 * b + 1));
      std::vector<int> joined = rest;
      joined.push_back(a);
      joined.push_back(b);
      Rat inner = psi_rec(g - 1, joined);
      subset_split(rest, [&](const std::vector<int>& I, const std::vector<int>& J) {
        for (int g1 = 0; g1 <= g; ++g1) {
          std::vector<int> left = I, right = J;
          left.push_back(a);
          right.push_back(b);
          inner += psi_rec(g1, left) * psi_rec(g - g1, right);
        }
      });
      half_sum += w * inner;
    }
    sum += half_sum * Rat(1, 2);
    result = sum / Rat(double_factorial(2 * k1 + 1));
  }
  memo_put(key, result);
  return result;
}

// psi and odd-ch integrals; ch factors are removed one at a time.
Rat psi_ch(int g, std::vector<int> psis, std::vector<int> chs) {
  if (g < 0) return Rat(0);
  for (int m : chs)
    if (m < 1 || m % 2 == 0) return Rat(0);
  if (chs.empty()) return psi_rec(g, std::move(psis));
  const int n = static_cast<int>(psis.size());
  if (2 * g - 2 + n <= 0) return Rat(0);
  long total = std::accumulate(psis.begin(), psis.end(), 0L) +
               std::accumulate(chs.begin(), chs.end(), 0L);
  if (total != 3L * g - 3 + n) return Rat(0);
  for (int k : psis)
    if (k < 0) return Rat(0);

  std::sort(psis.begin(), psis.end());
  std::sort(chs.begin(), chs.end());
  std::string key = "ch|" + std::to_string(g) + "|" + join(psis) + "|" + join(chs);
  Rat cached;
  if (memo_get(key, cached)) return cached;

  const int m = chs.back();            // odd, m = 2l - 1
  const int l = (m + 1) / 2;
  std::vector<int> rest_ch(chs.begin(), chs.end() - 1);

  std::vector<int> with_new = psis;
  with_new.push_back(2 * l);
  Rat acc = psi_ch(g, with_new, rest_ch);

  for (int j = 0; j < n; ++j) {
    std::vector<int> bumped = psis;
    bumped[j] += 2 * l - 1;
    acc -= psi_ch(g, bumped, rest_ch);
  }

  Rat boundary(0);
  for (int i = 0; i <= 2 * l - 2; ++i) {
    const int ii = 2 * l - 2 - i;
    const Rat sign(i % 2 ? -1 : 1);
    std::vector<int> glued = psis;
    glued.push_back(i);
    glued.push_back(ii);
    Rat term = psi_ch(g - 1, glued, rest_ch);
    // separating degenerations: distribute markings and ch factors
    subset_split(psis, [&](const std::vector<int>& I, const std::vector<int>& J) {
      subset_split(rest_ch, [&](const std::vector<int>& C, const std::vector<int>& D) {
        for (int h = 0; h <= g; ++h) {
          std::vector<int> left = I, right = J;
          left.push_back(i);
          right.push_back(ii);
          term += psi_ch(h, left, C) * psi_ch(g - h, right, D);
        }
      });
    });
    boundary += sign * term;
  }
  acc += boundary * Rat(1, 2);

  Rat result = bernoulli(2 * l) * inv_factorial(2 * l) * acc;
  memo_put(key, result);
  return result;
}

// kappa classes unfolded by adding a marking upstairs; remaining kappas
// on the bigger space differ from pullbacks by -psi^b of the new point,
// which the signed subset sum accounts for.
Rat psi_kappa_ch(int g, std::vector<int> psis, std::vector<int> kappas,
                 std::vector<int> chs) {
  for (int a : kappas)
    if (a < 1) return Rat(0);
  if (kappas.empty()) return psi_ch(g, std::move(psis), std::move(chs));

  std::sort(psis.begin(), psis.end());
  std::sort(kappas.begin(), kappas.end());
  std::sort(chs.begin(), chs.end());
  std::string key = "kap|" + std::to_string(g) + "|" + join(psis) + "|" +
                    join(kappas) + "|" + join(chs);
  Rat cached;
  if (memo_get(key, cached)) return cached;

  const int b = kappas.back();
  std::vector<int> rest(kappas.begin(), kappas.end() - 1);
  const int r = static_cast<int>(rest.size());
  Rat acc(0);
  for (int mask = 0; mask < (1 << r); ++mask) {
    int extra = 0, bits = 0;
    std::vector<int> keep;
    for (int i = 0; i < r; ++i) {
      if (mask & (1 << i)) { extra += rest[i]; ++bits; }
      else keep.push_back(rest[i]);
    }
    std::vector<int> up = psis;
    up.push_back(b + 1 + extra);
    Rat term = psi_kappa_ch(g, up, keep, chs);
    acc += (bits % 2 ? -term : term);
  }
  memo_put(key, acc);
  return acc;
}

} // namespace

Rat psi_integral(int g, std::vector<int> ks) { return psi_rec(g, std::move(ks)); }

Rat psi_kappa_integral(int g, std::vector<int> psis, std::vector<int> kappas) {
  return hodge_integral(g, std::move(psis), std::move(kappas), {}, {});
}

std::vector<std::pair<std::vector<int>, Rat>> lambda_in_ch(int j) {
  // degree-j part of exp(sum_m (2m-2)! ch_{2m-1}); partitions of j into
  // odd parts p with weight prod (p-1)!^{mult} / mult!.
  std::vector<std::pair<std::vector<int>, Rat>> out;
  std::vector<int> parts;
  auto rec = [&](auto&& self, int remaining, int maxpart) -> void {
    if (remaining == 0) {
      Rat coeff(1);
      for (size_t i = 0; i < parts.size();) {
        size_t jj = i;
        while (jj < parts.size() && parts[jj] == parts[i]) ++jj;
        const size_t mult = jj - i;
        coeff *= rat_pow(Rat(factorial(parts[i] - 1)), static_cast<long>(mult));
        coeff /= Rat(factorial(static_cast<unsigned long>(mult)));
        i = jj;
      }
      std::vector<int> sorted = parts;
      std::sort(sorted.begin(), sorted.end());
      out.emplace_back(std::move(sorted), coeff);
      return;
    }
    for (int p = std::min(maxpart, remaining); p >= 1; p -= 2) {
      parts.push_back(p);
      self(self, remaining - p, p);
      parts.pop_back();
    }
  };
  int start = j % 2 ? j : j - 1;
  rec(rec, j, start);
  return out;
}

Rat hodge_integral(int g, std::vector<int> psis, std::vector<int> kappas,
                   std::vector<int> lambdas, std::vector<int> chs) {
  if (g < 0) return Rat(0);
  for (int j : lambdas) {
    if (j < 0) return Rat(0);
    if (j > g) return Rat(0);   // rank-g bundle
    if (j == 0) continue;       // lambda_0 = 1
  }
  lambdas.erase(std::remove(lambdas.begin(), lambdas.end(), 0), lambdas.end());
  for (int m : chs)
    if (m < 1 || m % 2 == 0) return Rat(0);
  // kappa_0 scales by 2g - 2 + n on the current space
  Rat scalar(1);
  const int n = static_cast<int>(psis.size());
  std::vector<int> kap;
  for (int a : kappas) {
    if (a < 0) return Rat(0);
    if (a == 0) scalar *= Rat(2 * g - 2 + n);
    else kap.push_back(a);
  }
  if (scalar.is_zero()) return Rat(0);

  // expand the lambda monomial into ch monomials
  std::vector<std::pair<std::vector<int>, Rat>> terms{{{}, Rat(1)}};
  for (int j : lambdas) {
    std::vector<std::pair<std::vector<int>, Rat>> next;
    for (const auto& [mono, coeff] : terms)
      for (const auto& [lmono, lcoeff] : lambda_in_ch(j)) {
        std::vector<int> merged = mono;
        merged.insert(merged.end(), lmono.begin(), lmono.end());
        std::sort(merged.begin(), merged.end());
        next.emplace_back(std::move(merged), coeff * lcoeff);
      }
    terms = std::move(next);
  }

  Rat acc(0);
  for (const auto& [mono, coeff] : terms) {
    std::vector<int> all_ch = chs;
    all_ch.insert(all_ch.end(), mono.begin(), mono.end());
    acc += coeff * psi_kappa_ch(g, psis, kap, all_ch);
  }
  return scalar * acc;
}

// ---- persistence ----

CacheLoadStats load_correlator_cache(const std::string& path, unsigned seed) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open cache file: " + path);
  std::string header;
  std::getline(in, header);
  if (header != "tautring-cache v1")
    throw std::runtime_error("unrecognised cache header in " + path);
  std::vector<std::pair<std::string, Rat>> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto sep = line.rfind(" = ");
    if (sep == std::string::npos)
      throw std::runtime_error("malformed cache line: " + line);
    entries.emplace_back(line.substr(0, sep), Rat(line.substr(sep + 3)));
  }
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    for (const auto& [k, v] : entries) memo[k] = v;
  }
  CacheLoadStats stats;
  stats.entries = entries.size();
  // spot-check about 1% (at least one entry when any exist)
  std::mt19937 rng(seed);
  size_t checks = entries.empty() ? 0 : std::max<size_t>(1, entries.size() / 100);
  for (size_t c = 0; c < checks; ++c) {
    const auto& [key, val] = entries[rng() % entries.size()];
    {
      std::lock_guard<std::mutex> lock(memo_mutex);
      memo.erase(key);
    }
    // reparse the key and recompute
    std::istringstream ks(key);
    std::string kind, gstr;
    std::getline(ks, kind, '|');
    std::getline(ks, gstr, '|');
    auto ints = [](const std::string& s) {
      std::vector<int> v;
      std::istringstream is(s);
      std::string tok;
      while (std::getline(is, tok, ','))
        if (!tok.empty()) v.push_back(std::stoi(tok));
      return v;
    };
    std::string f1, f2, f3;
    std::getline(ks, f1, '|');
    std::getline(ks, f2, '|');
    std::getline(ks, f3, '|');
    const int g = std::stoi(gstr);
    Rat fresh;
    if (kind == "psi") fresh = psi_rec(g, ints(f1));
    else if (kind == "ch") fresh = psi_ch(g, ints(f1), ints(f2));
    else if (kind == "kap") fresh = psi_kappa_ch(g, ints(f1), ints(f2), ints(f3));
    else throw std::runtime_error("unknown cache entry kind: " + kind);
    if (fresh != val)
      throw std::runtime_error("cache verification failed for: " + key);
    ++stats.reverified;
  }
  return stats;
}

void save_correlator_cache(const std::string& path) {
  std::lock_guard<std::mutex> lock(memo_mutex);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write cache file: " + path);
  out << "tautring-cache v1\n";
  for (const auto& [k, v] : memo) out << k << " = " << v.str() << "\n";
}

void clear_correlator_cache() {
  std::lock_guard<std::mutex> lock(memo_mutex);
  memo.clear();
}

std::size_t correlator_cache_size() {
  std::lock_guard<std::mutex> lock(memo_mutex);
  return memo.size();
}

} // namespace taut
