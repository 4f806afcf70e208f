#include "galmot/cli.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>

#include "galmot/class_function.hpp"
#include "galmot/coloring.hpp"
#include "galmot/covers.hpp"
#include "galmot/error.hpp"
#include "galmot/group.hpp"
#include "galmot/motive.hpp"
#include "galmot/numtheory.hpp"

namespace galmot::cli {

namespace {

const std::vector<std::string> kFleetCovers = {"kummer:m=2", "kummer:m=3", "kummer:m=4",
                                               "kummer:m=6", "roots:n=3",  "prod(kummer:m=2,kummer:m=3)"};

struct Rows {
  std::string tsv;
  std::vector<std::string> failures;
};

template <typename... Ts>
std::string row(const Ts&... fields) {
  std::ostringstream os;
  std::size_t i = 0;
  ((os << (i++ ? "\t" : "") << fields), ...);
  os << '\n';
  return os.str();
}

std::string fraction(std::uint64_t a, std::uint64_t b) { return std::to_string(a) + "/" + std::to_string(b); }

std::string decimal(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::vector<std::uint64_t> prime_powers_upto(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q <= limit; ++q) {
    if (prime_power(q)) out.push_back(q);
  }
  return out;
}

// Runs one task per index and concatenates rows in index order.
Report assemble(const std::string& header, std::size_t count, std::size_t jobs,
                const std::function<Rows(std::size_t)>& task) {
  std::vector<Rows> parts(count);
  parallel_for(count, jobs, [&](std::size_t i) { parts[i] = task(i); });
  Report r;
  r.tsv = header;
  for (auto& p : parts) {
    r.tsv += p.tsv;
    for (auto& f : p.failures) r.failures.push_back(std::move(f));
  }
  r.ok = r.failures.empty();
  return r;
}

std::vector<Coloring> every_coloring(const GroupPtr& g, const PrimeSet& p, std::size_t max_bits) {
  const auto permitted = psub(*g, p);
  std::vector<Coloring> out;
  if (permitted.size() <= max_bits) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << permitted.size()); ++mask) {
      std::vector<ClassId> cls;
      for (std::size_t i = 0; i < permitted.size(); ++i) {
        if (mask >> i & 1) cls.push_back(permitted[i]);
      }
      out.emplace_back(g, p, cls);
    }
    return out;
  }
  out.push_back(Coloring::empty(g, p));
  out.push_back(Coloring::full(g, p));
  for (std::size_t i = 0; i < permitted.size(); ++i) {
    out.emplace_back(g, p, std::vector<ClassId>{permitted[i]});
    std::vector<ClassId> rest;
    for (std::size_t j = 0; j < permitted.size(); ++j) {
      if (j != i) rest.push_back(permitted[j]);
    }
    out.emplace_back(g, p, rest);
  }
  return out;
}

std::vector<PrimeSet> identity_prime_sets() {
  std::vector<PrimeSet> out;
  const std::vector<std::uint64_t> base = {2, 3, 5};
  for (unsigned mask = 0; mask < 8; ++mask) {
    std::vector<std::uint64_t> ps;
    for (unsigned i = 0; i < 3; ++i) {
      if (mask >> i & 1) ps.push_back(base[i]);
    }
    out.push_back(PrimeSet::of(ps));
  }
  out.push_back(PrimeSet::all());
  return out;
}

std::vector<CoverPtr> covers_of(const RunConfig& c, const std::vector<std::string>& defaults) {
  std::vector<CoverPtr> out;
  for (const auto& s : c.covers.empty() ? defaults : c.covers) out.push_back(parse_cover_spec(s));
  return out;
}

// (cover, q) pairs; defaulted q lists silently drop bad q, explicit ones report it.
struct Instance {
  CoverPtr cover;
  std::uint64_t q;
  std::optional<std::string> bad;
};

std::vector<Instance> instances(const RunConfig& c, const std::vector<std::string>& default_covers,
                                const std::vector<std::uint64_t>& default_qs) {
  std::vector<Instance> out;
  for (const auto& cover : covers_of(c, default_covers)) {
    for (auto q : c.qs.empty() ? default_qs : c.qs) {
      auto bad = cover->bad_reason(q);
      if (bad && c.qs.empty()) continue;
      out.push_back({cover, q, bad});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suites

Report torsor_suite(const RunConfig& c) {
  const auto work = instances(c, kFleetCovers, prime_powers_upto(31));
  return assemble("# cover\tq\tcolorings\tagree\tskipped\tstar\tstatus\n", work.size(), c.jobs, [&](std::size_t i) {
    const auto& [cover, q, bad] = work[i];
    Rows out;
    if (bad) {
      out.tsv = row(cover->tag(), q, "-", "-", "-", "-", "not good: " + *bad);
      return out;
    }
    CoverOverField cf(cover, q);
    const auto colorings = every_coloring(cf.group(), PrimeSet::all(), 16);
    std::size_t agree = 0, skipped = 0;
    std::string note;
    for (const auto& col : colorings) {
      try {
        const Rational weighted = cf.weighted_count(alpha_from_coloring(col));
        const auto direct = cf.count_definable(col);
        if (weighted == Rational(static_cast<long long>(direct))) {
          ++agree;
        } else {
          out.failures.push_back("torsor " + cover->tag() + " q=" + std::to_string(q) + " " + col.to_spec() +
                                 ": weighted " + to_string(weighted) + " != count " + std::to_string(direct));
        }
      } catch (const CeilingExceeded& e) {
        ++skipped;
        if (note.empty()) note = e.what();
      } catch (const BudgetExceeded& e) {
        ++skipped;
        if (note.empty()) note = e.what();
      }
    }
    // Condition (*) on the trivial coloring: symbolic shape and point count.
    const auto& g = *cf.group();
    const auto triv = Coloring::trivial(cf.group(), PrimeSet::all());
    const MotiveExpr mu = motive_of_cover(triv, cover->tag());
    const Rational expected_coef(1, static_cast<long long>(g.order()));
    const bool shape = mu.terms == std::map<ClassId, Rational>{{0, expected_coef}} && mu.free_terms.empty();
    const Rational realized = realize_count(mu, cf);
    const Rational v_over_g = Rational(static_cast<long long>(cf.fixed_count(0))) * expected_coef;
    const Rational direct(static_cast<long long>(cf.count_definable(triv)));
    const bool star = shape && realized == v_over_g && realized == direct;
    if (!star) {
      out.failures.push_back("star " + cover->tag() + " q=" + std::to_string(q) + ": realized " + to_string(realized) +
                             ", #V/|G| " + to_string(v_over_g) + ", count " + to_string(direct));
    }
    const bool ok = agree + skipped == colorings.size() && star;
    std::string status = ok ? "ok" : "FAIL";
    if (skipped) status += " (skipped: " + note + ")";
    out.tsv = row(cover->tag(), q, colorings.size(), agree, skipped, star ? "ok" : "FAIL", status);
    return out;
  });
}

Report theta_suite(const RunConfig& c) {
  const auto work = instances(c, kFleetCovers, prime_powers_upto(19));
  const std::vector<std::uint64_t> ns = c.ns.empty() ? std::vector<std::uint64_t>{2, 3, 4, 6} : c.ns;
  return assemble("# cover\tq\tn\tcolorings\tagree\tstatus\n", work.size(), c.jobs, [&](std::size_t i) {
    const auto& [cover, q, bad] = work[i];
    Rows out;
    if (bad) {
      out.tsv = row(cover->tag(), q, "-", "-", "-", "not good: " + *bad);
      return out;
    }
    CoverOverField cf(cover, q);
    const auto colorings = every_coloring(cf.group(), PrimeSet::all(), 16);
    for (auto n : ns) {
      if (!checked_pow(q, static_cast<unsigned>(n), kFieldCeiling)) {
        out.tsv += row(cover->tag(), q, n, colorings.size(), 0, "skipped: q^n above field ceiling");
        continue;
      }
      std::size_t agree = 0;
      for (const auto& c2 : colorings) {
        const auto direct = cf.theta_direct_count(c2, n);
        const auto via = cf.count_definable(theta_coloring({PrimeSet::all(), PrimeSet::all(), n}, c2));
        if (direct == via) {
          ++agree;
        } else {
          out.failures.push_back("theta " + cover->tag() + " q=" + std::to_string(q) + " n=" + std::to_string(n) +
                                 " " + c2.to_spec() + ": direct " + std::to_string(direct) + " != " +
                                 std::to_string(via));
        }
      }
      out.tsv += row(cover->tag(), q, n, colorings.size(), agree, agree == colorings.size() ? "ok" : "FAIL");
    }
    return out;
  });
}

Report recursion_suite(const RunConfig& c) {
  const auto fleet = group_fleet(c.max_order);
  return assemble("# group\torder\tclasses\tequal\tstatus\n", fleet.size(), c.jobs, [&](std::size_t i) {
    const auto& [spec, g] = fleet[i];
    Rows out;
    std::size_t equal = 0;
    const std::size_t classes = g->cyclic_classes().size();
    for (ClassId k = 0; k < classes; ++k) {
      auto rec = uniqueness_recursion(g, k, PrimeSet::all(), "V");
      const auto direct = motive_of_cover(Coloring(g, PrimeSet::all(), {k}), "V");
      if (auto* e = std::get_if<MotiveExpr>(&rec); e && motive_equal(*e, direct)) {
        ++equal;
      } else {
        out.failures.push_back("recursion " + spec + " class " + std::to_string(k) + " differs from the Artin expansion");
      }
    }
    out.tsv = row(spec, g->order(), classes, equal, equal == classes ? "ok" : "FAIL");
    return out;
  });
}

Report identities_suite(const RunConfig& c) {
  const auto fleet = group_fleet(c.max_order);
  const auto sets = identity_prime_sets();
  return assemble("# group\torder\tclasses\texpand\trecursion\tinduction\talpha\tstatus\n", fleet.size(), c.jobs,
                  [&](std::size_t i) {
                    const auto& [spec, g] = fleet[i];
                    Rows out;
                    auto fail = [&](const std::string& what) { out.failures.push_back(spec + ": " + what); };
                    const auto all = PrimeSet::all();

                    std::size_t expand_ok = 0, expand_n = 0;
                    for (const auto& col : every_coloring(g, all, 10)) {
                      ++expand_n;
                      const auto alpha = alpha_from_coloring(col);
                      if (artin_recombine(g, artin_expand(alpha)) == alpha) {
                        ++expand_ok;
                      } else {
                        fail("Artin expansion does not recombine for " + col.to_spec());
                      }
                    }

                    std::size_t rec_ok = 0;
                    const std::size_t classes = g->cyclic_classes().size();
                    for (ClassId k = 0; k < classes; ++k) {
                      auto rec = uniqueness_recursion(g, k, all, "V");
                      auto* e = std::get_if<MotiveExpr>(&rec);
                      if (e && motive_equal(*e, motive_of_cover(Coloring(g, all, {k}), "V"))) {
                        ++rec_ok;
                      } else {
                        fail("recursion differs at class " + std::to_string(k));
                      }
                    }

                    std::size_t ind_ok = 0, ind_n = 0;
                    for (const auto& h : all_subgroups(*g)) {
                      const auto emb = subgroup_as_group(*g, h);
                      for (ClassId k = 0; k < emb.group->cyclic_classes().size(); ++k) {
                        const auto rep = check_induction_identity(g, emb, k, all);
                        if (!rep.hypothesis) continue;
                        ++ind_n;
                        if (rep.identity) {
                          ++ind_ok;
                        } else {
                          fail("induction identity fails for subgroup of order " + std::to_string(h.order()) +
                               ", class " + std::to_string(k));
                        }
                      }
                    }

                    std::size_t alpha_ok = 0, alpha_n = 0;
                    for (const auto& p1 : sets) {
                      for (const auto& p2 : sets) {
                        if (!p2.is_subset_of(p1)) continue;
                        for (const auto& c2 : every_coloring(g, p2, 10)) {
                          ++alpha_n;
                          if (alpha_from_coloring(theta_coloring({p1, p2, 1}, c2)) == alpha_from_coloring(c2)) {
                            ++alpha_ok;
                          } else {
                            fail("factor inclusion changes alpha for P1=" + p1.to_string() + " P2=" +
                                 p2.to_string() + " " + c2.to_spec());
                          }
                        }
                      }
                    }

                    out.tsv = row(spec, g->order(), classes, fraction(expand_ok, expand_n), fraction(rec_ok, classes),
                                  fraction(ind_ok, ind_n), fraction(alpha_ok, alpha_n),
                                  out.failures.empty() ? "ok" : "FAIL");
                    return out;
                  });
}

Report fibers_suite(const RunConfig& c) {
  const auto qs = c.qs.empty() ? std::vector<std::uint64_t>{7, 13, 19} : c.qs;
  const auto cover = c.covers.empty() ? ConcreteCover::roots(3) : parse_cover_spec(c.covers.front());
  return assemble("# cover\tq\tsubgroup\torder\tx2_points\tsizes\tpredicted\tstatus\n", qs.size(), c.jobs,
                  [&](std::size_t i) {
                    Rows out;
                    const auto q = qs[i];
                    if (auto bad = cover->bad_reason(q)) {
                      out.tsv = row(cover->tag(), q, "-", "-", "-", "-", "-", "not good: " + *bad);
                      return out;
                    }
                    CoverOverField cf(cover, q);
                    const auto& g = *cf.group();
                    // Every cyclic subgroup class of G as G_1, with C_1 its generating class.
                    for (const auto& cls : g.cyclic_classes()) {
                      const auto& h = cls.representative;
                      const auto emb = subgroup_as_group(g, h);
                      const ClassId c1 = emb.group->class_of(emb.restrict(h));
                      const auto hist = cf.fiber_histogram(emb, c1);
                      std::string sizes;
                      for (const auto& [size, count] : hist.sizes) {
                        sizes += (sizes.empty() ? "" : ",") + std::to_string(size) + "x" + std::to_string(count);
                      }
                      const bool ok = hist.constant_and_predicted();
                      if (!ok) {
                        out.failures.push_back("fibers " + cover->tag() + " q=" + std::to_string(q) + " subgroup <" +
                                               g.label(*cyclic_generator(g, h)) + ">: sizes " + sizes +
                                               " predicted " + to_string(hist.predicted));
                      }
                      out.tsv += row(cover->tag(), q, "<" + g.label(*cyclic_generator(g, h)) + ">", h.order(),
                                     hist.x2_points, sizes.empty() ? "-" : sizes, to_string(hist.predicted),
                                     ok ? "ok" : "FAIL");
                    }
                    return out;
                  });
}

Report counterexample_suite(const RunConfig& c) {
  std::vector<std::uint64_t> qs = c.qs;
  if (qs.empty()) {
    for (auto q : prime_powers_upto(101)) {
      if (q % 2) qs.push_back(q);
    }
  }
  const auto k2 = ConcreteCover::kummer(2);
  const auto k1 = ConcreteCover::kummer(1);
  return assemble("# q\tcount_XxG\tcount_V\ttheta2_XxG\ttheta2_V\tstatus\n", qs.size(), c.jobs, [&](std::size_t i) {
    Rows out;
    const auto q = qs[i];
    if (auto bad = k2->bad_reason(q)) {
      out.tsv = row(q, "-", "-", "-", "-", "not good: " + *bad);
      return out;
    }
    // X = X(V -> W, {1}) for y^2 = x; X x G is two copies of it. V is seen as
    // the identity cover V -> V, all of whose points are unramified.
    CoverOverField cover2(k2, q);
    CoverOverField cover1(k1, q);
    const auto trivial = Coloring::trivial(cover2.group(), PrimeSet::all());
    const auto everything = Coloring::full(cover1.group(), PrimeSet::all());
    const std::uint64_t count_xg = 2 * cover2.count_definable(trivial);
    const std::uint64_t count_v = cover2.quotient_count(trivial_subgroup());
    const std::uint64_t theta_xg = 2 * cover2.theta_direct_count(trivial, 2);
    const std::uint64_t theta_v = cover1.theta_direct_count(everything, 2);
    std::vector<std::string> bad;
    if (count_v != cover1.count_definable(everything)) bad.push_back("#V disagrees between routes");
    if (count_xg != count_v) bad.push_back("counts of X x G and V differ");
    if (count_v != q - 1) bad.push_back("#V != q - 1");
    if (theta_xg != 2 * (q - 1) || theta_v != q - 1) bad.push_back("theta_2 counts are not (2(q-1), q-1)");
    if (theta_xg == theta_v) bad.push_back("theta_2 counts coincide");
    for (const auto& b : bad) out.failures.push_back("counterexample q=" + std::to_string(q) + ": " + b);
    out.tsv = row(q, count_xg, count_v, theta_xg, theta_v, bad.empty() ? "ok" : "FAIL");
    return out;
  });
}

Report density_suite(const RunConfig& c) {
  const auto covers = covers_of(c, {"roots:n=3"});
  const auto qs = c.qs.empty() ? std::vector<std::uint64_t>{101} : c.qs;
  std::vector<std::pair<CoverPtr, std::uint64_t>> work;
  for (const auto& cover : covers) {
    for (auto q : qs) work.emplace_back(cover, q);
  }
  return assemble("# cover\tq\torder\trep\tcount\tobserved\tpredicted\tdeviation\tbound\tstatus\n", work.size(),
                  c.jobs, [&](std::size_t i) {
                    const auto& [cover, q] = work[i];
                    Rows out;
                    const auto table = density_table(cover, q);
                    if (table.refused) {
                      out.tsv = row(cover->tag(), q, "-", "-", "-", "-", "-", "-", "-", "refused: " + *table.refused);
                      return out;
                    }
                    const double bound = 3.0 / std::sqrt(static_cast<double>(q));
                    for (const auto& r : table.rows) {
                      const double dev = std::abs(static_cast<double>(r.observed - r.predicted));
                      const bool within = dev <= bound;
                      if (!within) {
                        out.failures.push_back("density " + cover->tag() + " q=" + std::to_string(q) + " class " +
                                               std::to_string(r.order) + "@" + std::to_string(r.rep) +
                                               ": deviation " + decimal(dev) + " > " + decimal(bound));
                      }
                      out.tsv += row(cover->tag(), q, r.order, r.rep, r.count, to_string(r.observed),
                                     to_string(r.predicted), decimal(dev), decimal(bound),
                                     within ? "within" : "outside");
                    }
                    return out;
                  });
}

// ---------------------------------------------------------------------------
// Experiments

Coloring coloring_for(const RunConfig& c, const CoverPtr& cover) {
  return parse_coloring_spec(c.coloring, cover->group(), parse_prime_set(c.primes));
}

Report count_experiment(const RunConfig& c) {
  const auto cover = parse_cover_spec(c.covers.front());
  const auto col = coloring_for(c, cover);
  Report r;
  r.tsv = "# q\tcount\n";
  for (auto q : c.qs) {
    CoverOverField cf(cover, q);
    r.tsv += row(q, cf.count_definable(col));
  }
  return r;
}

Report artin_table_experiment(const RunConfig& c) {
  const auto cover = parse_cover_spec(c.covers.front());
  Report r;
  r.tsv = "# q\torder\trep\tcount\n";
  for (auto q : c.qs) {
    CoverOverField cf(cover, q);
    const auto table = cf.artin_table();
    const auto& g = *cf.group();
    for (ClassId k = 0; k < table.size(); ++k) {
      r.tsv += row(q, g.cyclic_classes()[k].order(), g.class_generator(k), table[k]);
    }
  }
  return r;
}

Report motive_experiment(const RunConfig& c) {
  const auto cover = parse_cover_spec(c.covers.front());
  Report r;
  r.tsv = "# coef\tsymbol\n" + render(motive_of_cover(coloring_for(c, cover), cover->tag()));
  return r;
}

Report theta_count_experiment(const RunConfig& c) {
  const auto cover = parse_cover_spec(c.covers.front());
  const auto col = coloring_for(c, cover);
  Report r;
  r.tsv = "# q\tn\tcount\n";
  for (auto q : c.qs) {
    CoverOverField cf(cover, q);
    for (auto n : c.ns) r.tsv += row(q, n, cf.theta_direct_count(col, n));
  }
  return r;
}

using Runner = Report (*)(const RunConfig&);

const std::map<std::string, Runner>& suites() {
  static const std::map<std::string, Runner> m = {
      {"identities", identities_suite}, {"torsor", torsor_suite},
      {"theta", theta_suite},           {"recursion", recursion_suite},
      {"fibers", fibers_suite},         {"counterexample", counterexample_suite},
      {"density", density_suite}};
  return m;
}

const std::map<std::string, Runner>& experiments() {
  static const std::map<std::string, Runner> m = {{"count", count_experiment},
                                                   {"artin-table", artin_table_experiment},
                                                   {"motive", motive_experiment},
                                                   {"theta-count", theta_count_experiment}};
  return m;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"identities", "torsor",         "theta",  "recursion",
                                                 "fibers",     "counterexample", "density"};
  return names;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"count", "artin-table", "motive", "theta-count", "density"};
  return names;
}

PrimeSet parse_prime_set(const std::string& text) {
  if (text == "all") return PrimeSet::all();
  if (text == "none" || text.empty()) return PrimeSet::none();
  std::vector<std::uint64_t> ps;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, end - start);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 9) {
      throw ParseError("expected a prime in prime list", start);
    }
    const auto p = std::stoull(item);
    if (!is_prime(p)) throw ParseError(item + " is not prime", start);
    ps.push_back(p);
    start = end + 1;
  }
  return PrimeSet::of(ps);
}

void validate(const RunConfig& c) {
  const bool suite = suites().count(c.command) > 0;
  const bool experiment = experiments().count(c.command) > 0;
  if (!suite && !experiment) throw Error("unknown command '" + c.command + "'");
  if (c.jobs == 0) throw Error("--jobs must be at least 1");
  if (c.max_order == 0 || c.max_order > kMaxGroupOrder) throw Error("--max-order out of range");
  for (auto n : c.ns) {
    if (n == 0) throw Error("--n must be positive");
  }
  parse_prime_set(c.primes);
  std::vector<CoverPtr> covers;
  for (const auto& s : c.covers) covers.push_back(parse_cover_spec(s));
  if (!experiment) return;

  auto need = [&](bool present, const std::string& flag) {
    if (!present) throw Error(c.command + " needs " + flag);
  };
  need(covers.size() == 1, "exactly one --cover");
  if (c.command != "motive") need(!c.qs.empty(), "--q");
  if (c.command == "count" || c.command == "motive" || c.command == "theta-count") {
    need(!c.coloring.empty(), "--coloring");
    coloring_for(c, covers.front());
  }
  if (c.command == "theta-count") need(!c.ns.empty(), "--n");
  for (auto q : c.qs) {
    if (auto bad = covers.front()->bad_reason(q)) throw BadPrime(*bad);
  }
}

Report run(const RunConfig& c) {
  validate(c);
  if (auto it = suites().find(c.command); it != suites().end()) return it->second(c);
  return experiments().at(c.command)(c);
}

}  // namespace galmot::cli
