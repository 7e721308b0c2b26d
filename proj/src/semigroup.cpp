#include "qga/semigroup.hpp"

#include <algorithm>
#include <stdexcept>

namespace qga {

std::optional<AssocWitness> associativity_witness(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[static_cast<std::size_t>(a)].size()) != n)
      throw std::invalid_argument("semigroup table is not square");
    for (int v : table[static_cast<std::size_t>(a)])
      if (v < 0 || v >= n) throw std::invalid_argument("semigroup table entry out of range");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ab = table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      for (int c = 0; c < n; ++c) {
        int bc = table[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
        if (table[static_cast<std::size_t>(ab)][static_cast<std::size_t>(c)] !=
            table[static_cast<std::size_t>(a)][static_cast<std::size_t>(bc)])
          return AssocWitness{a, b, c};
      }
    }
  return std::nullopt;
}

bool verify_associativity(const std::vector<std::vector<int>>& table) {
  return !associativity_witness(table).has_value();
}

FiniteSemigroup make_semigroup(std::vector<std::vector<int>> table) {
  if (table.empty()) throw std::invalid_argument("semigroup must be nonempty");
  if (auto w = associativity_witness(table))
    throw std::invalid_argument("table is not associative at (" + std::to_string(w->a) + "," +
                                std::to_string(w->b) + "," + std::to_string(w->c) + ")");
  FiniteSemigroup s;
  s.n = static_cast<int>(table.size());
  s.table = std::move(table);
  s.zero = find_zero(s);
  return s;
}

std::optional<int> find_zero(const FiniteSemigroup& s) {
  for (int x = 0; x < s.n; ++x) {
    bool ok = true;
    for (int y = 0; y < s.n; ++y)
      if (s.mul(x, y) != x || s.mul(y, x) != x) {
        ok = false;
        break;
      }
    if (ok) return x;
  }
  return std::nullopt;
}

std::vector<int> principal_ideal(const FiniteSemigroup& s, int x) {
  std::vector<char> in(static_cast<std::size_t>(s.n), 0);
  std::vector<int> stack{x};
  in[static_cast<std::size_t>(x)] = 1;
  while (!stack.empty()) {
    int a = stack.back();
    stack.pop_back();
    for (int t = 0; t < s.n; ++t) {
      for (int p : {s.mul(t, a), s.mul(a, t)}) {
        if (!in[static_cast<std::size_t>(p)]) {
          in[static_cast<std::size_t>(p)] = 1;
          stack.push_back(p);
        }
      }
    }
  }
  std::vector<int> out;
  for (int i = 0; i < s.n; ++i)
    if (in[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

bool is_ideal(const FiniteSemigroup& s, const std::vector<int>& ideal) {
  std::vector<char> in(static_cast<std::size_t>(s.n), 0);
  for (int i : ideal) {
    if (i < 0 || i >= s.n) return false;
    in[static_cast<std::size_t>(i)] = 1;
  }
  for (int i : ideal)
    for (int t = 0; t < s.n; ++t)
      if (!in[static_cast<std::size_t>(s.mul(t, i))] || !in[static_cast<std::size_t>(s.mul(i, t))])
        return false;
  return true;
}

namespace {

bool set_equal(const std::vector<int>& a, const std::vector<int>& b) { return a == b; }

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

IdealChain maximal_ideal_chain(const FiniteSemigroup& s) {
  IdealChain chain;
  std::vector<int> current(static_cast<std::size_t>(s.n));
  for (int i = 0; i < s.n; ++i) current[static_cast<std::size_t>(i)] = i;
  chain.chain.push_back(current);

  while (!current.empty()) {
    // Greedy union of principal ideals properly inside the current level,
    // in ascending generator order, never letting the union reach the level.
    std::vector<int> next;
    for (int x : current) {
      std::vector<int> p = principal_ideal(s, x);
      if (set_equal(p, current)) continue;
      std::vector<int> u = sorted_union(next, p);
      if (!set_equal(u, current)) next = std::move(u);
    }
    // Certify maximality: every generator outside `next` must fill the gap.
    for (int x : current) {
      if (std::binary_search(next.begin(), next.end(), x)) continue;
      if (!set_equal(sorted_union(next, principal_ideal(s, x)), current))
        throw std::logic_error("ideal chain step is not maximal (internal error)");
    }
    chain.chain.push_back(next);
    current = chain.chain.back();
  }
  return chain;
}

QuotientResult quotient(const FiniteSemigroup& s, const std::vector<int>& ideal) {
  if (!is_ideal(s, ideal)) throw std::invalid_argument("quotient requires an ideal");
  std::vector<char> in_ideal(static_cast<std::size_t>(s.n), 0);
  for (int i : ideal) in_ideal[static_cast<std::size_t>(i)] = 1;

  QuotientResult res;
  res.to_quotient.assign(static_cast<std::size_t>(s.n), 0);
  res.from_quotient.push_back(-1);  // adjoined zero
  for (int i = 0; i < s.n; ++i) {
    if (in_ideal[static_cast<std::size_t>(i)]) continue;
    res.to_quotient[static_cast<std::size_t>(i)] = static_cast<int>(res.from_quotient.size());
    res.from_quotient.push_back(i);
  }

  const int qn = static_cast<int>(res.from_quotient.size());
  res.semigroup.n = qn;
  res.semigroup.zero = 0;
  res.semigroup.table.assign(static_cast<std::size_t>(qn), std::vector<int>(static_cast<std::size_t>(qn), 0));
  for (int a = 1; a < qn; ++a)
    for (int b = 1; b < qn; ++b) {
      int p = s.mul(res.from_quotient[static_cast<std::size_t>(a)], res.from_quotient[static_cast<std::size_t>(b)]);
      res.semigroup.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          in_ideal[static_cast<std::size_t>(p)] ? 0 : res.to_quotient[static_cast<std::size_t>(p)];
    }
  return res;
}

Classification classify(const FiniteSemigroup& s) {
  Classification c;
  std::optional<int> z = find_zero(s);

  if (z) {
    bool all_zero = true;
    for (int a = 0; a < s.n && all_zero; ++a)
      for (int b = 0; b < s.n; ++b)
        if (s.mul(a, b) != *z) {
          all_zero = false;
          break;
        }
    if (all_zero) {
      c.verdict = Verdict::ZeroSemigroup;
      return c;
    }
    bool simple = true;
    for (int x = 0; x < s.n && simple; ++x) {
      if (x == *z) continue;
      std::vector<int> p = principal_ideal(s, x);
      if (static_cast<int>(p.size()) != s.n) {
        simple = false;
        c.bad_ideal = std::move(p);
      }
    }
    if (simple) {
      c.verdict = Verdict::ZeroSimple;
      return c;
    }
  }

  bool latin = true;
  for (int a = 0; a < s.n && latin; ++a) {
    std::vector<char> row(static_cast<std::size_t>(s.n), 0), col(static_cast<std::size_t>(s.n), 0);
    for (int b = 0; b < s.n; ++b) {
      if (row[static_cast<std::size_t>(s.mul(a, b))]++ != 0) latin = false;
      if (col[static_cast<std::size_t>(s.mul(b, a))]++ != 0) latin = false;
    }
  }
  if (latin) {
    for (int e = 0; e < s.n; ++e) {
      bool unit = true;
      for (int x = 0; x < s.n; ++x)
        if (s.mul(e, x) != x || s.mul(x, e) != x) {
          unit = false;
          break;
        }
      if (unit) {
        c.verdict = Verdict::Group;
        c.unit = e;
        return c;
      }
    }
  }
  c.verdict = Verdict::Other;
  c.detail = z ? "has zero but proper nonzero ideals" : "no zero, not a group";
  return c;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ZeroSemigroup: return "zero-semigroup";
    case Verdict::ZeroSimple: return "0-simple";
    case Verdict::Group: return "group";
    default: return "other";
  }
}

bool ReesParams::regular() const {
  for (int i = 0; i < n_rows; ++i) {
    bool any = false;
    for (int j = 0; j < m_cols; ++j) any |= (rho[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] >= 0);
    if (!any) return false;
  }
  for (int j = 0; j < m_cols; ++j) {
    bool any = false;
    for (int i = 0; i < n_rows; ++i) any |= (rho[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] >= 0);
    if (!any) return false;
  }
  return true;
}

int rees_index(const ReesParams& p, int i, int j, int h) {
  return 1 + (i * p.m_cols + j) * p.H.n + h;
}

FiniteSemigroup rees_construct(const ReesParams& p) {
  if (p.n_rows <= 0 || p.m_cols <= 0) throw std::invalid_argument("Rees dimensions must be positive");
  // The one-element semigroup classifies as a zero semigroup by convention,
  // but it is also the trivial group and a valid Rees base.
  if (p.H.n != 1 && classify(p.H).verdict != Verdict::Group)
    throw std::invalid_argument("Rees base must be a group");
  if (static_cast<int>(p.rho.size()) != p.n_rows) throw std::invalid_argument("rho row count mismatch");
  for (const auto& row : p.rho) {
    if (static_cast<int>(row.size()) != p.m_cols) throw std::invalid_argument("rho column count mismatch");
    for (int v : row)
      if (v < -1 || v >= p.H.n) throw std::invalid_argument("rho entry out of range");
  }

  const int hn = p.H.n;
  const int size = 1 + p.n_rows * p.m_cols * hn;
  FiniteSemigroup s;
  s.n = size;
  s.zero = 0;
  s.table.assign(static_cast<std::size_t>(size), std::vector<int>(static_cast<std::size_t>(size), 0));

  for (int i1 = 0; i1 < p.n_rows; ++i1)
    for (int j1 = 0; j1 < p.m_cols; ++j1)
      for (int h1 = 0; h1 < hn; ++h1) {
        int a = rees_index(p, i1, j1, h1);
        for (int i2 = 0; i2 < p.n_rows; ++i2)
          for (int j2 = 0; j2 < p.m_cols; ++j2)
            for (int h2 = 0; h2 < hn; ++h2) {
              int b = rees_index(p, i2, j2, h2);
              int r = p.rho[static_cast<std::size_t>(i2)][static_cast<std::size_t>(j1)];
              if (r < 0) continue;  // product is the zero, already set
              int h = p.H.mul(p.H.mul(h1, r), h2);
              s.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = rees_index(p, i1, j2, h);
            }
      }

  if (auto w = associativity_witness(s.table))
    throw std::runtime_error("Rees construction produced a non-associative table");
  return s;
}

SandwichResult sandwich(const FiniteSemigroup& s, int x) {
  std::vector<char> in(static_cast<std::size_t>(s.n), 0);
  for (int a = 0; a < s.n; ++a) in[static_cast<std::size_t>(s.mul(s.mul(x, a), x))] = 1;

  SandwichResult res;
  std::vector<int> to_sub(static_cast<std::size_t>(s.n), -1);
  for (int i = 0; i < s.n; ++i)
    if (in[static_cast<std::size_t>(i)]) {
      to_sub[static_cast<std::size_t>(i)] = static_cast<int>(res.carrier.size());
      res.carrier.push_back(i);
    }

  const int sn = static_cast<int>(res.carrier.size());
  res.semigroup.n = sn;
  res.semigroup.table.assign(static_cast<std::size_t>(sn), std::vector<int>(static_cast<std::size_t>(sn), 0));
  for (int a = 0; a < sn; ++a)
    for (int b = 0; b < sn; ++b) {
      int p = s.mul(res.carrier[static_cast<std::size_t>(a)], res.carrier[static_cast<std::size_t>(b)]);
      if (to_sub[static_cast<std::size_t>(p)] < 0)
        throw std::logic_error("sandwich subsemigroup is not closed (internal error)");
      res.semigroup.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = to_sub[static_cast<std::size_t>(p)];
    }
  res.semigroup.zero = find_zero(res.semigroup);
  return res;
}

namespace {

struct Restriction {
  FiniteSemigroup sub;
  std::vector<int> from_sub;
};

Restriction restrict_to(const FiniteSemigroup& s, const std::vector<int>& subset) {
  Restriction r;
  std::vector<int> to_sub(static_cast<std::size_t>(s.n), -1);
  for (int i : subset) {
    to_sub[static_cast<std::size_t>(i)] = static_cast<int>(r.from_sub.size());
    r.from_sub.push_back(i);
  }
  const int n = static_cast<int>(r.from_sub.size());
  r.sub.n = n;
  r.sub.table.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int p = s.mul(r.from_sub[static_cast<std::size_t>(a)], r.from_sub[static_cast<std::size_t>(b)]);
      if (to_sub[static_cast<std::size_t>(p)] < 0)
        throw std::logic_error("restriction is not closed (internal error)");
      r.sub.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = to_sub[static_cast<std::size_t>(p)];
    }
  r.sub.zero = find_zero(r.sub);
  return r;
}

GroupExtraction fail(std::string stage, std::string detail) {
  GroupExtraction g;
  g.ok = false;
  g.failed_stage = std::move(stage);
  g.detail = std::move(detail);
  return g;
}

}  // namespace

QuotientResult chain_quotient(const FiniteSemigroup& s, const std::vector<int>& upper,
                              const std::vector<int>& lower) {
  Restriction restricted = restrict_to(s, upper);
  std::vector<int> lower_sub;
  for (std::size_t i = 0; i < restricted.from_sub.size(); ++i)
    if (std::binary_search(lower.begin(), lower.end(), restricted.from_sub[i]))
      lower_sub.push_back(static_cast<int>(i));
  QuotientResult qr = quotient(restricted.sub, lower_sub);
  // Rewrite the maps to speak in original indices.
  QuotientResult out;
  out.semigroup = std::move(qr.semigroup);
  out.to_quotient.assign(static_cast<std::size_t>(s.n), 0);
  for (std::size_t i = 0; i < restricted.from_sub.size(); ++i)
    out.to_quotient[static_cast<std::size_t>(restricted.from_sub[i])] = qr.to_quotient[i];
  out.from_quotient.reserve(qr.from_quotient.size());
  for (int fi : qr.from_quotient)
    out.from_quotient.push_back(fi < 0 ? -1 : restricted.from_sub[static_cast<std::size_t>(fi)]);
  return out;
}

GroupExtraction extract_group(const FiniteSemigroup& s, int near_unit) {
  if (near_unit < 0 || near_unit >= s.n) return fail("input", "near_unit index out of range");
  if (auto w = associativity_witness(s.table))
    return fail("associativity", "witness (" + std::to_string(w->a) + "," + std::to_string(w->b) +
                                     "," + std::to_string(w->c) + ")");

  IdealChain chain = maximal_ideal_chain(s);
  std::size_t level = 0;
  for (std::size_t i = 0; i < chain.chain.size(); ++i)
    if (std::binary_search(chain.chain[i].begin(), chain.chain[i].end(), near_unit)) level = i;
  const std::vector<int>& upper = chain.chain[level];
  const std::vector<int>& lower = chain.chain[level + 1];

  // Work in the quotient of the near_unit level by the level below it; when
  // the level below is empty the level itself is already the right stage.
  Restriction restricted = restrict_to(s, upper);
  FiniteSemigroup stage;
  std::vector<int> stage_to_s;  // -1 marks an adjoined zero
  if (lower.empty()) {
    stage = restricted.sub;
    stage_to_s = restricted.from_sub;
  } else {
    std::vector<int> lower_sub;
    for (std::size_t i = 0; i < restricted.from_sub.size(); ++i)
      if (std::binary_search(lower.begin(), lower.end(), restricted.from_sub[i]))
        lower_sub.push_back(static_cast<int>(i));
    QuotientResult qr = quotient(restricted.sub, lower_sub);
    stage = qr.semigroup;
    stage_to_s.reserve(qr.from_quotient.size());
    for (int fi : qr.from_quotient)
      stage_to_s.push_back(fi < 0 ? -1 : restricted.from_sub[static_cast<std::size_t>(fi)]);
  }

  Classification cls = classify(stage);
  if (cls.verdict == Verdict::ZeroSemigroup) return fail("classify", "zero-semigroup");
  if (cls.verdict == Verdict::Other) return fail("classify", "level quotient is neither 0-simple nor a group");

  int probe = -1;
  for (std::size_t i = 0; i < stage_to_s.size(); ++i)
    if (stage_to_s[i] == near_unit) probe = static_cast<int>(i);
  if (probe < 0) return fail("level", "near_unit fell into the ideal below its level");

  SandwichResult sw = sandwich(stage, probe);
  if (classify(sw.semigroup).verdict == Verdict::ZeroSemigroup)
    return fail("sandwich", "zero-semigroup");

  // Strip the zero, if any, and check what remains is a group.
  std::vector<int> keep;
  for (int i = 0; i < sw.semigroup.n; ++i)
    if (!sw.semigroup.zero || *sw.semigroup.zero != i) keep.push_back(i);
  if (keep.empty()) return fail("sandwich", "zero-semigroup");
  for (int a : keep)
    for (int b : keep)
      if (sw.semigroup.zero && sw.semigroup.mul(a, b) == *sw.semigroup.zero)
        return fail("strip-zero", "nonzero part is not closed under the product");
  Restriction stripped = restrict_to(sw.semigroup, keep);

  Classification gc = classify(stripped.sub);
  // A single idempotent is the trivial group even though it classifies as a
  // zero semigroup by convention.
  if (gc.verdict != Verdict::Group && stripped.sub.n != 1)
    return fail("group-check", verdict_name(gc.verdict));

  GroupExtraction out;
  out.ok = true;
  out.group = stripped.sub;
  out.embedding.reserve(stripped.from_sub.size());
  for (int i : stripped.from_sub) {
    int in_stage = sw.carrier[static_cast<std::size_t>(i)];
    out.embedding.push_back(stage_to_s[static_cast<std::size_t>(in_stage)]);
  }
  return out;
}

}  // namespace qga
