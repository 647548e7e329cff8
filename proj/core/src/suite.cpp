#include "lsnet/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <thread>

#include "lsnet/equivalence.hpp"
#include "lsnet/net.hpp"
#include "lsnet/net_io.hpp"
#include "lsnet/net_rewrite.hpp"
#include "lsnet/readback.hpp"
#include "lsnet/term_rewrite.hpp"
#include "lsnet/translate.hpp"

namespace lsnet {

const char* kCyclicFixtureJson = R"({
  "nodes": [
    {"id": "r",  "ntype": "m"},
    {"id": "m1", "ntype": "m"},
    {"id": "x",  "ntype": "e"}
  ],
  "links": [
    {"id": "d0", "kind": "der",  "sources": [], "targets": ["r", "x"]},
    {"id": "d1", "kind": "der",  "sources": [], "targets": ["m1", "x"]},
    {"id": "l1", "kind": "bang", "sources": ["m1", "x"], "targets": []}
  ],
  "root": "r",
  "freeVars": [],
  "iboxes": {"l1": ["d1"]}
})";

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

unsigned worker_count(const SuiteOptions& o) {
  unsigned t = o.threads ? o.threads : std::thread::hardware_concurrency();
  return t ? t : 1;
}

struct FailLog {
  std::mutex mu;
  std::atomic<long> count{0};
  std::vector<std::string> samples;

  void add(const std::string& what) {
    ++count;
    std::lock_guard<std::mutex> g(mu);
    if (samples.size() < 5) samples.push_back(what);
  }
  std::string summary() const {
    std::string s;
    for (const auto& f : samples) {
      s += "\n      ";
      s += f;
    }
    return s;
  }
};

// Corpus kept as printed strings; workers parse their own copies.
std::vector<std::string> corpus_strings(int max_size) {
  std::vector<std::string> out;
  enumerate_terms({max_size, {"x", "y", "z"}}, [&](const ExprPtr& t) {
    out.push_back(print_expr(t));
    return true;
  });
  return out;
}

void parallel_terms(const std::vector<std::string>& corpus, unsigned threads,
                    const std::function<void(const ExprPtr&)>& fn, FailLog& fails) {
  std::atomic<size_t> next{0};
  const size_t block = 256;
  auto work = [&]() {
    while (true) {
      size_t begin = next.fetch_add(block);
      if (begin >= corpus.size()) return;
      size_t end = std::min(corpus.size(), begin + block);
      for (size_t i = begin; i < end; ++i) {
        ExprPtr t = parse_expr(corpus[i]);
        try {
          fn(t);
        } catch (const std::exception& e) {
          fails.add(corpus[i] + " : " + e.what());
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
}

std::vector<std::string> names_union(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b) {
  std::vector<std::string> u = a;
  u.insert(u.end(), b.begin(), b.end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

std::vector<std::string> net_free_var_names(const Net& n) {
  std::vector<std::string> out;
  for (NodeIdx v : n.free_vars) out.push_back(n.nodes[v].id);
  return out;
}

// ---------------------------------------------------------------------------
// criterion 1: static soundness

CriterionResult crit_static_soundness(const SuiteOptions& opts, std::ostream& log) {
  auto start = Clock::now();
  CriterionResult res{1, "static soundness of the translation", false, 0, "", 0};
  FailLog fails;
  std::atomic<long> checked{0};

  const std::vector<std::vector<std::string>> deltas = {{}, {"w1"}};
  auto corpus = corpus_strings(opts.term_size);
  log << "  [1] terms: " << corpus.size() << ", deltas: 2\n" << std::flush;
  parallel_terms(corpus, worker_count(opts), [&](const ExprPtr& t) {
    for (const auto& delta : deltas) {
      Net p = translate(t, delta);
      auto viol = validate(p);
      if (!viol.empty()) {
        fails.add(print_expr(t) + " : invalid image: " + viol.front().condition);
        continue;
      }
      if (!is_correct(p)) {
        fails.add(print_expr(t) + " : image is not correct");
        continue;
      }
      if (net_kind(p) != NetKind::TermNet) {
        fails.add(print_expr(t) + " : image is not a term net");
        continue;
      }
      if (net_free_var_names(p) != names_union(free_vars(t), delta)) {
        fails.add(print_expr(t) + " : free variables differ");
        continue;
      }
      bool mult_ok = true;
      for (const auto& x : free_vars(t))
        if (net_multiplicity(p, x) != multiplicity(t, x)) mult_ok = false;
      for (const auto& w : delta)
        if (!has_free_var(t, w) && net_multiplicity(p, w) != 0) mult_ok = false;
      if (!mult_ok) {
        fails.add(print_expr(t) + " : multiplicities differ");
        continue;
      }
      ++checked;
    }
  }, fails);

  // decomposition contexts
  auto ctx_corpus = corpus_strings(opts.context_size);
  log << "  [1] context sources: " << ctx_corpus.size() << "\n" << std::flush;
  parallel_terms(ctx_corpus, worker_count(opts), [&](const ExprPtr& t) {
    std::vector<Path> positions;
    std::function<void(const Expr&, Path)> walk = [&](const Expr& e, Path pos) {
      positions.push_back(pos);
      if (e.kind == ExprKind::Abs) {
        pos.push_back(0);
        walk(*e.left, pos);
      } else if (e.kind == ExprKind::App || e.kind == ExprKind::Sub) {
        pos.push_back(0);
        walk(*e.left, pos);
        pos.back() = 1;
        walk(*e.right, pos);
      }
    };
    walk(*t, {});
    for (const auto& pos : positions) {
      auto dec = split_at(t, pos);
      Net q = translate(dec.context, {});
      if (!validate(q).empty() || !is_correct(q) || net_kind(q) != NetKind::ContextNet) {
        fails.add(print_expr(dec.context) + " : bad context image");
        continue;
      }
      if (net_free_var_names(q) != free_vars(dec.context)) {
        fails.add(print_expr(dec.context) + " : context free variables differ");
        continue;
      }
      ++checked;
    }
  }, fails);

  res.checked = checked.load();
  res.pass = fails.count.load() == 0;
  res.detail = res.pass ? "" : std::to_string(fails.count.load()) + " failures" + fails.summary();
  res.seconds = elapsed(start);
  return res;
}

// ---------------------------------------------------------------------------
// criterion 2: sequentialisation round trips

CriterionResult crit_round_trips(const SuiteOptions& opts, std::ostream& log) {
  auto start = Clock::now();
  CriterionResult res{2, "sequentialisation round trips", false, 0, "", 0};
  FailLog fails;
  std::atomic<long> checked{0};
  const std::vector<std::vector<std::string>> deltas = {{}, {"w1"}};
  auto corpus = corpus_strings(opts.term_size);
  log << "  [2] terms: " << corpus.size() << ", deltas: 2\n" << std::flush;
  parallel_terms(corpus, worker_count(opts), [&](const ExprPtr& t) {
    for (const auto& delta : deltas) {
      Net p = translate(t, delta);
      ReadBackResult rb = read_back_full(p);
      Net again = translate(rb.expr, rb.weakened);
      if (!net_iso_eq(again, p)) {
        fails.add(print_expr(t) + " : translate(read_back) is not isomorphic to the image");
        continue;
      }
      if (!equiv_via_nets(rb.expr, t)) {
        fails.add(print_expr(t) + " : read back " + print_expr(rb.expr) +
                  " is not equivalent to the term");
        continue;
      }
      ++checked;
    }
  }, fails);
  res.checked = checked.load();
  res.pass = fails.count.load() == 0;
  res.detail = res.pass ? "" : std::to_string(fails.count.load()) + " failures" + fails.summary();
  res.seconds = elapsed(start);
  return res;
}

// ---------------------------------------------------------------------------
// criterion 3: the quotient induced by translation

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(size_t n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int a) {
    while (up[a] != a) a = up[a] = up[up[a]];
    return a;
  }
  void unite(int a, int b) { up[find(a)] = find(b); }
};

CriterionResult crit_quotient(const SuiteOptions& opts, std::ostream& log) {
  auto start = Clock::now();
  CriterionResult res{3, "quotient: equivalence = net isomorphism", false, 0, "", 0};
  FailLog fails;
  long checked = 0;

  auto corpus_s = corpus_strings(opts.pair_size);
  std::vector<ExprPtr> terms;
  terms.reserve(corpus_s.size());
  for (const auto& s : corpus_s) terms.push_back(parse_expr(s));
  log << "  [3] terms: " << terms.size() << "\n" << std::flush;

  std::map<std::string, int> by_key;
  for (size_t i = 0; i < terms.size(); ++i) by_key[alpha_key(terms[i])] = static_cast<int>(i);

  // equivalence classes by one-step closure inside the corpus
  UnionFind eq(terms.size());
  for (size_t i = 0; i < terms.size(); ++i) {
    for (const auto& nb : equiv_neighbors(terms[i])) {
      auto it = by_key.find(alpha_key(nb));
      if (it == by_key.end()) {
        fails.add(print_expr(terms[i]) + " : neighbor escapes the corpus");
        continue;
      }
      eq.unite(static_cast<int>(i), it->second);
      ++checked;
    }
  }

  // isomorphism classes, bucketed by fingerprint
  std::vector<Net> nets;
  nets.reserve(terms.size());
  for (const auto& t : terms) nets.push_back(translate(t));
  std::map<std::string, std::vector<int>> buckets;
  for (size_t i = 0; i < terms.size(); ++i)
    buckets[net_fingerprint(nets[i])].push_back(static_cast<int>(i));
  std::vector<int> iso_class(terms.size(), -1);
  {
    std::atomic<long> iso_checks{0};
    std::vector<std::vector<int>> bucket_list;
    for (auto& [_, b] : buckets) bucket_list.push_back(b);
    std::atomic<size_t> next{0};
    auto work = [&]() {
      while (true) {
        size_t bi = next.fetch_add(1);
        if (bi >= bucket_list.size()) return;
        auto& bucket = bucket_list[bi];
        std::vector<int> reps;
        for (int i : bucket) {
          bool placed = false;
          for (int r : reps) {
            ++iso_checks;
            if (net_iso_eq(nets[i], nets[r])) {
              iso_class[i] = r;
              placed = true;
              break;
            }
          }
          if (!placed) {
            reps.push_back(i);
            iso_class[i] = i;
          }
        }
      }
    };
    unsigned tc = worker_count(opts);
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < tc; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    checked += iso_checks.load();
  }

  // the two partitions must coincide
  std::map<int, int> eq_to_iso;
  for (size_t i = 0; i < terms.size(); ++i) {
    int e = eq.find(static_cast<int>(i));
    auto it = eq_to_iso.find(e);
    if (it == eq_to_iso.end()) {
      eq_to_iso[e] = iso_class[i];
    } else if (it->second != iso_class[i]) {
      fails.add(print_expr(terms[i]) + " / " + print_expr(terms[e]) +
                " : equivalent terms with non-isomorphic nets");
    }
  }
  std::map<int, int> iso_to_eq;
  for (size_t i = 0; i < terms.size(); ++i) {
    auto it = iso_to_eq.find(iso_class[i]);
    if (it == iso_to_eq.end()) {
      iso_to_eq[iso_class[i]] = eq.find(static_cast<int>(i));
    } else if (it->second != eq.find(static_cast<int>(i))) {
      fails.add(print_expr(terms[i]) + " / " + print_expr(terms[it->second]) +
                " : isomorphic nets from non-equivalent terms");
    }
  }

  // read_back_all spans exactly the equivalence class
  {
    std::map<int, std::set<std::string>> class_keys;
    for (size_t i = 0; i < terms.size(); ++i)
      class_keys[eq.find(static_cast<int>(i))].insert(alpha_key(terms[i]));
    for (auto& [rep, keys] : class_keys) {
      std::set<std::string> rb_keys;
      for (const auto& e : read_back_all(nets[rep]))
        rb_keys.insert(alpha_key(e));
      if (rb_keys != keys)
        fails.add(print_expr(terms[rep]) + " : read_back_all differs from the class (" +
                  std::to_string(rb_keys.size()) + " vs " + std::to_string(keys.size()) + ")");
      ++checked;
    }
  }

  // the excluded right-application axiom must separate the nets
  {
    ExprPtr a = parse_expr("(y x)[x<-z]");
    ExprPtr b = parse_expr("y (x[x<-z])");
    if (equiv_via_nets(a, b))
      fails.add("(y x)[x<-z] vs y (x[x<-z]) : nets must not be isomorphic");
    ++checked;
  }

  res.checked = checked;
  res.pass = fails.count.load() == 0;
  res.detail = res.pass ? "" : std::to_string(fails.count.load()) + " failures" + fails.summary();
  res.seconds = elapsed(start);
  return res;
}

// ---------------------------------------------------------------------------
// criteria 4 and 5: dynamic isomorphism, preservation of correctness

std::pair<CriterionResult, CriterionResult> crit_dynamic(const SuiteOptions& opts,
                                                         std::ostream& log) {
  auto start = Clock::now();
  CriterionResult res4{4, "dynamic isomorphism of redexes", false, 0, "", 0};
  CriterionResult res5{5, "preservation of correctness under net steps", false, 0, "", 0};
  FailLog fails4, fails5;
  std::atomic<long> squares{0}, reducts{0};

  auto corpus = corpus_strings(opts.term_size);
  log << "  [4,5] terms: " << corpus.size() << "\n" << std::flush;
  parallel_terms(corpus, worker_count(opts), [&](const ExprPtr& t) {
    Net p = translate(t);
    RedexBijection bij;
    try {
      bij = redex_bijection(p, t);
    } catch (const std::exception& e) {
      fails4.add(print_expr(t) + " : " + e.what());
      return;
    }
    for (const auto& pair : bij.pairs) {
      ExprPtr s = apply_term_redex(t, pair.term);
      Net q = apply_net_redex(p, pair.net);
      bool sound = true;
      if (!validate(q).empty()) {
        fails5.add(print_expr(t) + " : reduct invalid after " +
                   rule_name(pair.term.kind));
        sound = false;
      } else if (!is_correct(q)) {
        fails5.add(print_expr(t) + " : reduct incorrect after " +
                   rule_name(pair.term.kind));
        sound = false;
      } else {
        try {
          linear_skeleton(q);
        } catch (const std::exception& e) {
          fails5.add(print_expr(t) + " : reduct skeleton: " + e.what());
          sound = false;
        }
      }
      if (sound) ++reducts;
      Net expected = translate(s, free_weakening_names(q));
      if (!net_iso_eq(q, expected)) {
        fails4.add(print_expr(t) + " : square fails for the " +
                   std::string(rule_name(pair.term.kind)) + "-redex at " +
                   path_to_string(pair.term.at) + " (term reduct " + print_expr(s) + ")");
        continue;
      }
      ++squares;
    }
  }, fails4);

  res4.checked = squares.load();
  res4.pass = fails4.count.load() == 0;
  res4.detail =
      res4.pass ? "" : std::to_string(fails4.count.load()) + " failures" + fails4.summary();
  res4.seconds = elapsed(start);
  res5.checked = reducts.load();
  res5.pass = fails5.count.load() == 0;
  res5.detail =
      res5.pass ? "" : std::to_string(fails5.count.load()) + " failures" + fails5.summary();
  res5.seconds = res4.seconds;
  return {res4, res5};
}

// ---------------------------------------------------------------------------
// criterion 6: strong bisimulation

CriterionResult crit_bisimulation(const SuiteOptions& opts, std::ostream& log) {
  auto start = Clock::now();
  CriterionResult res{6, "structural equivalence is a strong bisimulation", false, 0, "", 0};
  FailLog fails;
  std::atomic<long> pairs{0};

  auto corpus = corpus_strings(opts.term_size);
  log << "  [6] terms: " << corpus.size() << "\n" << std::flush;
  auto sys = lsc_system();
  parallel_terms(corpus, worker_count(opts), [&](const ExprPtr& t) {
    auto rep = check_strong_bisimulation(sys, std::vector<ExprPtr>{t}, 2);
    pairs += rep.pairs;
    for (const auto& cx : rep.counterexamples)
      fails.add(cx.object + " ~ " + cx.neighbor + " : unmatched " + cx.kind + "-step to " +
                cx.reduct);
  }, fails);

  bool mutated_found = false;
  std::string mutated_example;
  {
    auto mutated = lsc_system_appr();
    for (const auto& s : corpus) {
      ExprPtr t = parse_expr(s);
      auto rep = check_strong_bisimulation(mutated, std::vector<ExprPtr>{t}, 1);
      if (!rep.ok()) {
        mutated_found = true;
        mutated_example = rep.counterexamples.front().object + " ~ " +
                          rep.counterexamples.front().neighbor;
        break;
      }
    }
    if (!mutated_found) fails.add("right-application variant produced no counterexample");
  }

  res.checked = pairs.load();
  res.pass = fails.count.load() == 0;
  res.detail = res.pass ? "mutated system breaks at " + mutated_example
                        : std::to_string(fails.count.load()) + " failures" + fails.summary();
  res.seconds = elapsed(start);
  return res;
}

// ---------------------------------------------------------------------------
// criterion 7: normal forms against the beta oracle

CriterionResult crit_normal_forms(const SuiteOptions& opts, std::ostream& log) {
  auto start = Clock::now();
  CriterionResult res{7, "normal-form agreement with the beta oracle", false, 0, "", 0};
  FailLog fails;
  long checked = 0;

  std::vector<std::string> sources = {
      // Church arithmetic: 2+2, 1+2, 2*2, 2*3, successor, pairs, booleans
      "(\\m. \\n. \\f. \\x. m f (n f x)) (\\f. \\x. f (f x)) (\\f. \\x. f (f x))",
      "(\\m. \\n. \\f. \\x. m f (n f x)) (\\f. \\x. f x) (\\f. \\x. f (f x))",
      "(\\m. \\n. \\f. m (n f)) (\\f. \\x. f (f x)) (\\f. \\x. f (f x))",
      "(\\m. \\n. \\f. m (n f)) (\\f. \\x. f (f x)) (\\f. \\x. f (f (f x)))",
      "(\\n. \\f. \\x. f (n f x)) (\\f. \\x. f (f (f x)))",
      "(\\p. p (\\a. \\b. a)) ((\\a. \\b. \\s. s a b) (\\u. u) (\\v. \\w. v))",
      "(\\p. p (\\a. \\b. b)) ((\\a. \\b. \\s. s a b) (\\u. u) (\\v. \\w. v))",
      "(\\a. \\b. a b (\\t. \\f. f)) (\\t. \\f. t) (\\t. \\f. t)",
      "(\\a. \\b. a (\\t. \\f. t) b) (\\t. \\f. f) (\\t. \\f. t)",
      "(\\n. n (\\u. \\t. \\f. f) (\\t. \\f. t)) (\\f. \\x. x)",
      "(\\x. x x) (\\y. y)",
      "(\\x. \\y. x) (\\z. z) ((\\w. w) (\\v. v))",
      "(\\x. x) ((\\y. y y) (\\z. z))",
      "(\\f. \\x. f (f x)) (\\y. y) (\\u. \\v. u)",
  };
  // closed corpus terms that terminate under the oracle
  {
    CorpusSpec spec{opts.term_size, {"x", "y", "z"}};
    enumerate_terms(spec, [&](const ExprPtr& t) {
      if (sources.size() >= 70) return false;
      if (!free_vars(t).empty()) return true;
      if (expr_size(t) < 4) return true;
      auto beta = beta_normalize(unfold(t), 200);
      if (beta.reached_normal_form) sources.push_back(print_expr(t));
      return true;
    });
  }
  log << "  [7] closed terminating terms: " << sources.size() << "\n" << std::flush;

  // the pinned arithmetic fact: 2+2 normalizes to the numeral 4
  {
    ExprPtr sum = well_name(parse_expr(sources[0]));
    ExprPtr four = parse_expr("\\f. \\x. f (f (f (f x)))");
    auto nf = normalize(sum, Strategy::LeftmostOutermost, 5000);
    if (!nf.reached_normal_form || !alpha_eq(unfold(nf.term), four))
      fails.add("2+2 does not normalize to the numeral 4");
    else
      ++checked;
  }

  for (const auto& src : sources) {
    ExprPtr t = well_name(parse_expr(src));
    auto beta = beta_normalize(unfold(t), 2000);
    if (!beta.reached_normal_form) {
      fails.add(src + " : beta oracle ran out of fuel");
      continue;
    }
    auto lsc = normalize(t, Strategy::LeftmostOutermost, 20000);
    if (!lsc.reached_normal_form) {
      fails.add(src + " : calculus normalization ran out of fuel");
      continue;
    }
    if (!alpha_eq(unfold(lsc.term), beta.term)) {
      fails.add(src + " : calculus normal form differs from the oracle");
      continue;
    }
    auto netnf = normalize_net(translate(t), 20000);
    if (!netnf.reached_normal_form) {
      fails.add(src + " : net normalization ran out of fuel");
      continue;
    }
    ExprPtr rb = read_back(netnf.net);
    if (!alpha_eq(rb, beta.term)) {
      fails.add(src + " : net normal form reads back to " + print_expr(rb) +
                " instead of the oracle's " + print_expr(beta.term));
      continue;
    }
    ++checked;
  }
  if (checked < 50) fails.add("fewer than 50 terminating terms checked");

  res.checked = checked;
  res.pass = fails.count.load() == 0;
  res.detail = res.pass ? "" : std::to_string(fails.count.load()) + " failures" + fails.summary();
  res.seconds = elapsed(start);
  return res;
}

// ---------------------------------------------------------------------------
// criterion 8: linear skeleton; the cyclic fixture

CriterionResult crit_skeleton(const SuiteOptions& opts, std::ostream& log) {
  auto start = Clock::now();
  CriterionResult res{8, "linear skeleton and the cyclic fixture", false, 0, "", 0};
  FailLog fails;
  std::atomic<long> checked{0};

  auto corpus = corpus_strings(opts.term_size);
  log << "  [8] terms: " << corpus.size() << "\n" << std::flush;
  const std::vector<std::vector<std::string>> deltas = {{}, {"w1"}};
  parallel_terms(corpus, worker_count(opts), [&](const ExprPtr& t) {
    for (const auto& delta : deltas) {
      Net p = translate(t, delta);
      auto order = linear_skeleton(p);  // throws when not a total order
      if (order.empty() || order.back() != p.nodes[p.root].id) {
        fails.add(print_expr(t) + " : skeleton does not end at the root");
        continue;
      }
      ++checked;
    }
  }, fails);

  {
    Net cyclic = net_from_json(kCyclicFixtureJson);
    if (!validate(cyclic).empty()) {
      fails.add("cyclic fixture : should be structurally valid");
    } else {
      auto rep = check_correctness(cyclic);
      if (rep.ok || rep.clause != "acyclic" || rep.witness.empty())
        fails.add("cyclic fixture : expected an acyclicity failure with a cycle witness");
      else
        ++checked;
    }
  }

  res.checked = checked.load();
  res.pass = fails.count.load() == 0;
  res.detail = res.pass ? "" : std::to_string(fails.count.load()) + " failures" + fails.summary();
  res.seconds = elapsed(start);
  return res;
}

}  // namespace

bool all_passed(const std::vector<CriterionResult>& rs) {
  for (const auto& r : rs)
    if (!r.pass) return false;
  return true;
}

std::vector<CriterionResult> run_suite(const std::string& which, const SuiteOptions& opts,
                                       std::ostream& log) {
  std::vector<CriterionResult> out;
  bool all = which == "all";
  if (all || which == "static") {
    out.push_back(crit_static_soundness(opts, log));
    out.push_back(crit_skeleton(opts, log));
  }
  if (all || which == "quotient") {
    out.push_back(crit_round_trips(opts, log));
    out.push_back(crit_quotient(opts, log));
  }
  if (all || which == "dynamic") {
    auto [r4, r5] = crit_dynamic(opts, log);
    out.push_back(r4);
    out.push_back(r5);
    out.push_back(crit_normal_forms(opts, log));
  }
  if (all || which == "bisim") {
    out.push_back(crit_bisimulation(opts, log));
  }
  if (out.empty()) throw std::invalid_argument("unknown suite '" + which + "'");
  std::sort(out.begin(), out.end(),
            [](const CriterionResult& a, const CriterionResult& b) { return a.number < b.number; });
  return out;
}

}  // namespace lsnet
