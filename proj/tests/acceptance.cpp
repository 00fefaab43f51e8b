// Acceptance harness.  Each criterion prints exactly one line, timed against
// its pinned budget; the exit code counts failed criteria.
#include <chrono>
#include <cstdio>
#include <set>
#include <string>

#include "stonework/audit.hpp"
#include "stonework/cli.hpp"
#include "stonework/fermion.hpp"

using namespace stonework;

namespace {

int g_failures = 0;

bool no_failures(const std::vector<Check>& cs) {
  for (const Check& c : cs)
    if (c.status == "fail") return false;
  return true;
}

bool all_pass(const std::vector<Check>& cs) {
  for (const Check& c : cs)
    if (c.status != "pass") return false;
  return true;
}

template <class F>
void criterion(int num, const char* what, double budget_s, F&& body) {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = body(note);
  } catch (const std::exception& e) {
    note = std::string("exception: ") + e.what();
  }
  double dt = std::chrono::duration<double>(clock::now() - t0).count();
  bool in_time = budget_s <= 0 || dt <= budget_s;
  if (!(ok && in_time)) ++g_failures;
  std::printf("[%s] criterion %2d: %s", ok && in_time ? "PASS" : "FAIL", num, what);
  if (!note.empty()) std::printf(" [%s]", note.c_str());
  if (budget_s > 0)
    std::printf(" (%.3f s of %g s)\n", dt, budget_s);
  else
    std::printf(" (%.3f s)\n", dt);
  std::fflush(stdout);
}

}  // namespace

int main() {
  criterion(1, "coordinate toggles square to the identity and commute,"
               " exhaustive over subsets of {1..8}", 1.0, [](std::string& note) {
    long checked = 0;
    for (uint64_t m = 0; m < 256; ++m) {
      FinSet k = FinSet::from_mask(m);
      for (int a = 1; a <= 8; ++a) {
        DyadicElem sa(FinSet::of({a}));
        if (dyadic_act(sa, dyadic_act(sa, k)) != k) return false;
        ++checked;
        for (int b = 1; b <= 8; ++b) {
          DyadicElem sb(FinSet::of({b}));
          if (dyadic_act(sa, dyadic_act(sb, k)) != dyadic_act(sb, dyadic_act(sa, k)))
            return false;
          ++checked;
        }
      }
    }
    note = std::to_string(checked) + " exact instances";
    return true;
  });

  criterion(2, "the orbit of the empty set is all 256 subsets and the action"
               " is free", 1.0, [](std::string& note) {
    std::set<FinSet> orbit;
    for (uint64_t g = 0; g < 256; ++g)
      orbit.insert(dyadic_act(DyadicElem(FinSet::from_mask(g)), FinSet()));
    if (orbit.size() != 256) return false;
    for (uint64_t m = 0; m < 256; ++m)
      if (!orbit.count(FinSet::from_mask(m))) return false;
    long fixed = 0;
    for (uint64_t g = 1; g < 256; ++g) {
      DyadicElem el(FinSet::from_mask(g));
      for (uint64_t m = 0; m < 256; ++m)
        if (dyadic_act(el, FinSet::from_mask(m)) == FinSet::from_mask(m)) ++fixed;
    }
    if (fixed != 0) return false;
    note = "256 orbit points, no fixed point among 255*256 pairs";
    return true;
  });

  criterion(3, "symbolic toggle images agree with the pointwise action on"
               " sampled basic sets", 10.0, [](std::string& note) {
    auto space = make_space("builtin-cantor");
    ImageAuditResult r = audit_images(*space, 12000, Rng(2026));
    note = std::to_string(r.samples) + " samples, " +
           std::to_string(r.guarded_hits) + " guarded-branch hits";
    return all_pass(r.checks) && r.samples >= 10000 && r.guarded_hits >= 100;
  });

  criterion(4, "involution towers up to five levels verify every window"
               " property exhaustively", 30.0, [](std::string& note) {
    auto space = make_space("builtin-cantor");
    int total = 0;
    for (int n = 1; n <= 5; ++n) {
      InvolutionTower tw = build_tower(space, n, default_neighborhoods(n),
                                       std::max(n + 3, 8));
      std::vector<Check> cs = audit_tower(tw);
      if (!all_pass(cs)) {
        note = "failure at " + std::to_string(n) + " levels";
        return false;
      }
      total += static_cast<int>(cs.size());
    }
    note = std::to_string(total) + " checks over towers of 1..5 levels";
    return true;
  });

  criterion(5, "the five-level tower reaches the whole window from the start"
               " point and its single generator walks the enumeration", 10.0,
            [](std::string& note) {
    auto space = make_space("builtin-cantor");
    InvolutionTower tw = build_tower(space, 5, default_neighborhoods(5), 8);
    std::set<FinSet> orbit;
    for (uint64_t g = 0; g < 32; ++g)
      orbit.insert(dyadic_action(tw, DyadicElem(FinSet::from_mask(g)), FinSet()));
    if (orbit.size() != 32) return false;
    for (uint64_t m = 0; m < 32; ++m)
      if (!orbit.count(FinSet::from_mask(m))) return false;

    ZActionMap z = build_zaction(std::move(tw));
    FinSet x;
    std::set<FinSet> images;
    for (uint64_t k = 0; k < 32; ++k) {
      if (x != enum_finset(k)) return false;
      if (k < 31) {
        if (!z.forward_defined(x)) return false;
        x = z.forward(x);
        if (!images.insert(x).second) return false;  // injectivity
      }
    }
    if (z.forward_defined(enum_finset(31))) return false;
    note = "orbit covers the window; 32 consecutive successor steps match"
           " the enumeration";
    return true;
  });

  criterion(6, "window algebra laws hold exactly on random rational kernels"
               " and the diagonal is its own commutant", 10.0,
            [](std::string& note) {
    Rng rng(2026);
    int total = 0;
    for (int n = 1; n <= 3; ++n) {
      OrbitWindow win(n);
      std::vector<Check> cs =
          audit_groupoid_laws<GaussRat>(win, 50, 0.0, rng.fork("laws"));
      if (!all_pass(cs)) {
        note = "law failure at window exponent " + std::to_string(n);
        return false;
      }
      total += static_cast<int>(cs.size());
      MasaReport mr = masa_check(win);
      if (mr.commutant_dim != (1ull << n) || !mr.diagonal_commutant ||
          !mr.free_action) {
        note = "commutant dimension wrong at window exponent " + std::to_string(n);
        return false;
      }
    }
    note = std::to_string(total) + " law checks, 50 rational kernels each,"
           " commutant dimensions 2,4,8";
    return true;
  });

  criterion(7, "one hundred random phase-times-translation unitaries factor"
               " with tiny residual and exactly resolving projections", 10.0,
            [](std::string& note) {
    std::vector<Check> cs =
        audit_normalizer(OrbitWindow(3), 100, 1e-9, Rng(2026).fork("norm"));
    note = std::to_string(cs.size()) + " checks at residual bound 1e-9";
    return all_pass(cs);
  });

  criterion(8, "flip-tower relations, signed-product independence, span"
               " dimensions and stage inclusions are exact", 60.0,
            [](std::string& note) {
    for (int n = 1; n <= 6; ++n) {
      if (!relations_check(stage(n))) {
        note = "relations fail at stage " + std::to_string(n);
        return false;
      }
      IndependenceReport ir = independence_check(stage(n));
      if (!ir.all_rank_one || ir.ranks.size() != (1ull << n)) {
        note = "independence fails at stage " + std::to_string(n);
        return false;
      }
    }
    for (int n = 1; n <= 4; ++n) {
      SpanReport sr = full_matrix_check(stage(n));
      uint64_t want = 1ull << (2 * n);
      if (!sr.full_matrix_algebra || sr.dimension != want) {
        note = "span dimension fails at stage " + std::to_string(n);
        return false;
      }
    }
    std::vector<Check> cs = afd_audit(6, 2026);
    if (!no_failures(cs)) {
      note = "stage inclusion audit reported a failure";
      return false;
    }
    note = "stages 1..6 relations and independence, spans 4,16,64,256,"
           " inclusions exact";
    return true;
  });

  criterion(9, "Boolean saturation of three half-spaces under the subgroup"
               " chain partitions the window with span dimensions 4,16,64",
            5.0, [](std::string& note) {
    auto space = make_space("builtin-cantor");
    if (!all_pass(audit_saturation(space, 3, 5))) return false;
    std::vector<ClopenPtr> gens;
    for (int j = 1; j <= 3; ++j)
      gens.push_back(ClopenExpr::basis(FinSet::of({j}), {}));
    std::vector<std::vector<DyadicElem>> subgroups;
    for (int p = 1; p <= 3; ++p) {
      std::vector<DyadicElem> sg;
      for (uint32_t m = 0; m < (1u << p); ++m)
        sg.push_back(DyadicElem(FinSet::from_mask(m)));
      subgroups.push_back(std::move(sg));
    }
    BooleanSaturation sat = saturate_boolean(space, gens, subgroups, 5);
    const uint64_t want[3] = {4, 16, 64};
    for (int p = 1; p <= 3; ++p) {
      FinDimAlgebra fd = findim_algebra(sat, p);
      if (fd.dimension != want[p - 1] || !fd.free_on_atoms) return false;
    }
    note = "stage dimensions 4,16,64 with freely permuted atoms";
    return true;
  });

  criterion(10, "the built-in space passes fifty feasibility audits and"
                " admissibility for every index up to 200", 5.0,
            [](std::string& note) {
    auto space = make_space("builtin-cantor");
    std::vector<Check> cs = audit_space(*space, 50, 10000, 200, Rng(2026));
    note = std::to_string(cs.size()) + " checks, feasibility bound 10000";
    return all_pass(cs);
  });

  criterion(11, "repeated runs from one seed render byte-identical reports",
            0.0, [](std::string& note) {
    RunConfig cfg;
    cfg.command = "verify";
    cfg.seed = 2026;
    RunResult a = run(cfg);
    RunResult b = run(cfg);
    if (a.rendered != b.rendered || a.printout != b.printout) return false;
    note = std::to_string(a.rendered.size()) + " bytes compared equal twice";
    return a.exit_code == 0;
  });

  std::printf("%d of 11 criteria passed\n", 11 - g_failures);
  return g_failures;
}
