// Acceptance checks: one PASS/FAIL line per criterion, with wall time
// against the budget. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "genusforge/codes.hpp"
#include "genusforge/lattice.hpp"
#include "genusforge/modcat.hpp"
#include "genusforge/quadspace.hpp"
#include "support/library.hpp"
#include "support/oracles.hpp"

using namespace genusforge;
using exact::Integer;
using exact::Rational;

namespace {

// Collects failed expectations for one criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
    ++total_;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::string s = std::to_string(total_ - failed_) + "/" + std::to_string(total_) + " checks";
    if (!notes_.empty()) s += "; " + notes_;
    for (const auto& f : failures_) s += "\n    failed: " + f;
    return s;
  }

 private:
  std::vector<std::string> failures_;
  std::string notes_;
  long total_ = 0, failed_ = 0;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<void(Checker&)> run;
};

template <class T>
std::string str(const T& v) {
  std::ostringstream o;
  o << v;
  return o.str();
}

std::string join(const std::vector<Integer>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x.get_str();
  return "(" + s + ")";
}

int mod8(int x) { return ((x % 8) + 8) % 8; }

std::uint64_t sigma_budget = 0;

void milgram_suite(Checker& c) {
  for (const auto& name : lattice::builtin_names()) {
    const auto l = lattice::builtin(name);
    const auto d = lattice::discriminant_form(l);
    const int s = quadspace::signature_mod8(d);
    c.expect(s == mod8(static_cast<int>(l.rank())), name + ": signature_mod8 " + std::to_string(s) + " vs rank " + std::to_string(l.rank()));
  }
  c.note(std::to_string(lattice::builtin_names().size()) + " built-ins");
}

void overlattice_reconstruction(Checker& c) {
  const auto d8 = lattice::d_n(8);
  const auto ols = lattice::overlattices(d8);
  c.expect(ols.size() == 3, "overlattices(D8) count " + std::to_string(ols.size()));
  int proper = 0;
  for (const auto& o : ols) {
    if (o.subgroup.order() == 1) {
      c.expect(o.lattice.gram() == d8.gram(), "trivial subgroup gives D8 itself");
      continue;
    }
    ++proper;
    c.expect(lattice::discriminant_form(o.lattice).order() == 1, "proper overlattice has trivial discriminant form");
    c.expect(exact::determinant(o.lattice.gram()) == 1, "proper overlattice has determinant 1");
    const auto th = lattice::theta_coefficients(o.lattice, 2);
    c.expect(th == std::vector<Integer>{1, 240, 2160}, "theta " + join(th));
    const auto rs = lattice::root_system(o.lattice);
    c.expect(rs.to_string() == "E8", "root system " + rs.to_string());
  }
  c.expect(proper == 2, "proper overlattices " + std::to_string(proper));
}

void genus_vs_isomorphism(Checker& c) {
  const auto a = lattice::e8e8(), b = lattice::d16_plus();
  c.expect(lattice::same_genus(a, b), "same_genus(E8^2, D16+)");
  const auto ta = lattice::theta_coefficients(a, 3), tb = lattice::theta_coefficients(b, 3);
  c.expect(ta == tb, "theta " + join(ta) + " vs " + join(tb));
  const auto ra = lattice::root_system(a), rb = lattice::root_system(b);
  c.expect(ra.to_string() == "E8+E8", "E8^2 roots " + ra.to_string());
  c.expect(rb.to_string() == "D16", "D16+ roots " + rb.to_string());
  c.expect(ra.root_count == 480 && rb.root_count == 480, "root counts " + std::to_string(ra.root_count) + ", " + std::to_string(rb.root_count));
  c.expect(ra.to_string() != rb.to_string(), "root systems differ");
  c.note("theta " + join(ta) + "; roots " + ra.to_string() + " vs " + rb.to_string());
}

void relation_suite(Checker& c) {
  const auto lib = testlib::space_library(32);
  for (const auto& ns : lib) {
    const auto m = modcat::from_quadratic_space(ns.space);
    const auto rep = modcat::verify_relations(m);
    c.expect(rep.all_passed(), ns.name + ": " + rep.first_failure());
    const auto t = modcat::verlinde_fusion(m);
    const auto& g = ns.space.group();
    bool ring = true;
    for (std::size_t x = 0; x < t.n; ++x)
      for (std::size_t y = 0; y < t.n; ++y) {
        const auto sum = static_cast<std::size_t>(g.add(static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)));
        for (std::size_t z = 0; z < t.n; ++z) ring = ring && t.at(x, y, z) == (z == sum ? 1 : 0);
      }
    c.expect(ring, ns.name + ": fusion is the group ring");
  }
  const auto ising = modcat::ising_data();
  const auto rep = modcat::verify_relations(ising);
  c.expect(rep.all_passed(), "Ising: " + rep.first_failure());
  const auto t = modcat::verlinde_fusion(ising);
  auto row = [&](std::size_t i, std::size_t j) { return std::vector<std::int64_t>{t.at(i, j, 0), t.at(i, j, 1), t.at(i, j, 2)}; };
  c.expect(row(2, 2) == std::vector<std::int64_t>{1, 1, 0}, "sigma x sigma = 1 + psi");
  c.expect(row(1, 1) == std::vector<std::int64_t>{1, 0, 0}, "psi x psi = 1");
  c.expect(row(1, 2) == std::vector<std::int64_t>{0, 0, 1}, "psi x sigma = sigma");
  c.note(std::to_string(lib.size()) + " spaces with |A| <= 32");
}

void genus_g_verlinde(Checker& c) {
  const auto lib = testlib::space_library(16);
  for (const auto& ns : lib) {
    const auto m = modcat::from_quadratic_space(ns.space);
    const Integer a = Integer(static_cast<long>(ns.space.order()));
    c.expect(modcat::genus_dimension(m, 0, {}) == 1, ns.name + ": g=0");
    c.expect(modcat::genus_dimension(m, 1, {}) == a, ns.name + ": g=1");
    c.expect(modcat::genus_dimension(m, 2, {}) == a * a, ns.name + ": g=2");
    const auto& g = ns.space.group();
    for (std::int64_t x = 0; x < g.order(); ++x)
      for (std::int64_t y = 0; y < g.order(); ++y) {
        const Integer v = modcat::genus_dimension(m, 0, {static_cast<std::size_t>(x), static_cast<std::size_t>(y)});
        c.expect(v == (g.add(x, y) == 0 ? 1 : 0), ns.name + ": punctures " + std::to_string(x) + "," + std::to_string(y));
      }
  }
  c.note(std::to_string(lib.size()) + " spaces with |A| <= 16");
}

void voa_milgram(Checker& c) {
  const auto t = modcat::trivial_data();
  for (int k = 0; k <= 32; ++k)
    c.expect(modcat::voa_milgram_check(t, Rational(k)) == (k % 8 == 0), "trivial, c=" + std::to_string(k));
  c.expect(modcat::voa_milgram_check(modcat::ising_data(), Rational(1, 2)), "Ising, c=1/2");
  for (const auto& name : lattice::builtin_names()) {
    const auto l = lattice::builtin(name);
    const auto m = modcat::from_quadratic_space(lattice::discriminant_form(l));
    c.expect(modcat::voa_milgram_check(m, Rational(static_cast<std::int64_t>(l.rank()))), name + ": (disc, rank)");
  }
}

void mass_formula(Checker& c) {
  codes::SigmaOptions opt;
  opt.node_budget = sigma_budget;
  const auto p = codes::sigma_profile(16, 16, opt);
  c.note("sigma_k(16) = " + join(p.counts) + (p.complete ? "" : " [partial: node budget " + std::to_string(sigma_budget) + "]") +
         "; " + std::to_string(p.nodes) + " nodes; " + std::to_string(codes::worker_count(0)) + " worker(s)");
  c.expect(p.complete, "search ran to exhaustion");
  if (!p.complete) return;
  c.expect(p.counts[1] == 1, "sigma_1 = 1");
  for (std::size_t k = 1; k <= 5; ++k) c.expect(p.counts[k] > 0, "sigma_" + std::to_string(k) + " > 0");
  for (std::size_t k = 6; k < p.counts.size(); ++k) c.expect(p.counts[k] == 0, "sigma_" + std::to_string(k) + " = 0");

  const Integer f16 = exact::factorial(16);
  Rational lhs_sum, rhs;
  for (std::size_t k = 1; k < p.counts.size(); ++k) {
    const long e = static_cast<long>(k * (k - 1) / 2);
    lhs_sum += Rational(exact::pow2(static_cast<unsigned>(e + 1))) * Rational(p.counts[k]);
    const Rational two_pow = e - 15 >= 0 ? Rational(exact::pow2(static_cast<unsigned>(e - 15)))
                                         : Rational(1) / Rational(exact::pow2(static_cast<unsigned>(15 - e)));
    rhs += two_pow * Rational(p.counts[k]) / Rational(f16);
  }
  const Rational lhs = lhs_sum / Rational(Integer(exact::pow2(16) * f16));
  c.expect(lhs == rhs, "mass identity " + lhs.to_string() + " vs " + rhs.to_string());
  c.expect(codes::relative_mass(p) == lhs, "relative_mass agrees with the direct sum");

  Integer gl = 1;
  for (unsigned i = 0; i < 4; ++i) gl *= exact::pow2(4) - exact::pow2(i);
  const Integer oracle = f16 / (exact::pow2(4) * gl);
  c.expect(gl == 20160, "|GL(4,2)| = " + gl.get_str());
  c.expect(p.counts[5] == oracle, "sigma_5 " + p.counts[5].get_str() + " vs 16!/|AGL(4,2)| " + oracle.get_str());
  c.note("mass " + lhs.to_string());
}

void lexicode_check(Checker& c) {
  using codes::Word;
  for (int n = 1; n <= 16; ++n)
    c.expect(testlib::greedy_scan(n, 4) == testlib::span_words(codes::lexicode(n, 4).basis()),
             "greedy scan equals span, n=" + std::to_string(n));

  const auto cc = codes::lexicode(48, 4);
  const auto d = codes::dual_code(cc);
  c.expect(codes::is_even(cc), "C even");
  // d(C) >= 4: parity-check columns distinct and nonzero give d >= 3, and C is even.
  std::vector<Word> cols;
  for (int i = 0; i < 48; ++i) {
    Word col = 0;
    for (std::size_t r = 0; r < d.basis().size(); ++r)
      if (d.basis()[r] >> i & 1) col |= Word(1) << r;
    cols.push_back(col);
  }
  std::sort(cols.begin(), cols.end());
  c.expect(cols.front() != 0 && std::adjacent_find(cols.begin(), cols.end()) == cols.end(), "minimum distance >= 4");
  c.expect(d.dim() == 48 - cc.dim(), "dim C + dim D = 48");
  c.expect(codes::contains_allones(d), "1^48 in D");

  std::mt19937_64 rng(48);
  long sampled = 0;
  bool all8 = true;
  for (; sampled < 1000000; ++sampled) {
    const std::uint64_t pick = rng();
    Word w = 0;
    for (std::size_t r = 0; r < d.basis().size(); ++r)
      if (pick >> r & 1) w ^= d.basis()[r];
    all8 = all8 && codes::weight(w) % 8 == 0;
  }
  c.expect(all8, "sampled codewords of D have weight in 8Z");
  bool pairs = true;
  for (Word a : d.basis())
    for (Word b : d.basis()) pairs = pairs && codes::weight(a ^ b) % 8 == 0;
  c.expect(pairs, "basis pair sums of D have weight in 8Z");
  c.expect(codes::weights_divisible_by_8(d), "basis overlap criterion for wt(D) in 8Z");
  c.expect(codes::check_framed_conditions({cc, d}, true).all_passed(), "framed self-dual conditions for (C, D)");
  c.note("dim C = " + std::to_string(cc.dim()) + ", dim D = " + std::to_string(d.dim()) + ", " + std::to_string(sampled) + " samples");
}

void oracle_equivalences(Checker& c) {
  const auto lib = testlib::space_library(64);
  for (const auto& ns : lib) {
    std::vector<std::vector<std::int64_t>> got;
    for (const auto& s : quadspace::isotropic_subgroups(ns.space)) got.push_back(s.elements);
    auto want = testlib::naive_isotropic(ns.space);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    c.expect(got == want, ns.name + ": isotropic subgroups");
  }
  for (int r = 1; r <= 12; ++r) {
    const auto got = codes::sigma_profile(r, r);
    const auto want = testlib::closure_counts(r, 8, true);
    for (int k = 1; k <= r; ++k) {
      const long w = k <= static_cast<int>(want.size()) ? want[static_cast<std::size_t>(k - 1)] : 0;
      c.expect(got.counts[static_cast<std::size_t>(k)] == w, "sigma_" + std::to_string(k) + "(" + std::to_string(r) + ")");
    }
  }
  std::vector<lattice::EvenLattice> ls = {lattice::a_n(1), lattice::a_n(2), lattice::a_n(3), lattice::a_n(4), lattice::d_n(4)};
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> off(-2, 2), diag(-3, 3);
  while (ls.size() < 60) {
    const std::size_t n = 1 + rng() % 4;
    exact::IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      g(i, i) = 2 * diag(rng);
      for (std::size_t j = i + 1; j < n; ++j) g(i, j) = g(j, i) = off(rng);
    }
    const Integer det = exact::determinant(g);
    if (det == 0 || abs(det) > (n == 4 ? 12 : 30)) continue;
    ls.emplace_back(g);
  }
  for (const auto& l : ls)
    c.expect(quadspace::q_value_multiset(lattice::discriminant_form(l)) == testlib::coset_norms(l),
             "disc form q-values of rank-" + std::to_string(l.rank()) + " lattice");
  c.note(std::to_string(lib.size()) + " spaces, r <= 12, " + std::to_string(ls.size()) + " lattices");
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--sigma-budget") sigma_budget = std::strtoull(argv[i + 1], nullptr, 10);

  const std::vector<Criterion> criteria = {
      {1, "Milgram suite on built-in lattices", 5, milgram_suite},
      {2, "Overlattice reconstruction from D8", 30, overlattice_reconstruction},
      {3, "Genus vs isomorphism: E8^2 and D16+", 120, genus_vs_isomorphism},
      {4, "Modular-data relations and Verlinde fusion", 60, relation_suite},
      {5, "Genus-g Verlinde dimensions", 10, genus_g_verlinde},
      {6, "VOA Milgram check", 5, voa_milgram},
      {7, "Mass formula at r = 16", 600, mass_formula},
      {8, "Lexicode(48, 4) properties", 60, lexicode_check},
      {9, "Oracle equivalences", 120, oracle_equivalences},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Checker c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= cr.budget_s;
    if (!in_time) c.expect(false, "runtime " + str(secs) + " s over budget " + str(cr.budget_s) + " s");
    const bool pass = c.ok();
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << cr.id << "] " << cr.name << " (" << std::fixed;
    std::cout.precision(2);
    std::cout << secs << " s, budget " << static_cast<int>(cr.budget_s) << " s): " << c.summary() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
