#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ggkit/bailey.hpp"
#include "ggkit/bijections.hpp"
#include "ggkit/marking.hpp"
#include "ggkit/partition.hpp"
#include "ggkit/verifier.hpp"

using namespace ggkit;
using nlohmann::json;

namespace {

constexpr int kPass = 0, kMismatch = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<int> k, i, n, n_max;
  std::optional<long> T;
  std::string profile, family, suite = "all", format = "text", map, tag, theorem, signed_parts;
  std::optional<int> p;
  int jobs = 1;
  long show = -1;
  bool gordon = false;
  std::string input;
};

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("bad integer '" + tok + "' in list '" + s + "'");
    }
  }
  return out;
}

bool json_out(const Options& o) { return o.format == "json"; }

int need(const std::optional<int>& v, const char* flag) {
  if (!v) throw UsageError(std::string(flag) + " is required");
  return *v;
}

// ---- enumerate

int cmd_enumerate(const Options& o) {
  int n = need(o.n, "--n");
  if (n < 0) throw UsageError("--n must be nonnegative");
  std::vector<std::string> lines;
  if (o.family.empty()) {
    for_each_overpartition(n, [&](const std::vector<OverPart>& v) {
      Overpartition p;
      p.parts = v;
      lines.push_back(format_overpartition(p));
    });
  } else {
    Family f = family_from_string(o.family);
    FamilySpec spec(f, need(o.k, "--k"), need(o.i, "--i"));
    if (family_on_overpartitions(f)) {
      for_each_overpartition(n, [&](const std::vector<OverPart>& v) {
        Overpartition p;
        p.parts = v;
        if (satisfies_family(p, spec)) lines.push_back(format_overpartition(p));
      });
    } else {
      for_each_partition(n, [&](const std::vector<int>& v) {
        Partition p{v};
        if (satisfies_family(p, spec)) lines.push_back(format_partition(p));
      });
    }
  }
  if (json_out(o)) {
    json j = {{"n", n}, {"count", lines.size()}, {"items", lines}};
    if (!o.family.empty()) j["family"] = {{"name", o.family}, {"k", *o.k}, {"i", *o.i}};
    std::cout << j.dump(2) << "\n";
  } else {
    for (auto& l : lines) std::cout << l << "\n";
    std::cerr << "count: " << lines.size() << "\n";
  }
  return kPass;
}

// ---- mark

std::string profile_text(const std::vector<int>& rows) {
  std::string s;
  for (size_t j = 0; j < rows.size(); ++j) s += (j ? "," : "") + std::to_string(rows[j]);
  return "(" + s + ")";
}

int cmd_mark(const Options& o) {
  if (o.gordon) {
    auto m = gordon_mark(parse_partition(o.input));
    auto rows = row_counts(m);
    if (json_out(o)) {
      std::cout << json{{"parts", m.base.parts}, {"marks", m.marks}, {"rows", rows}}.dump(2) << "\n";
    } else {
      // reuse the overpartition renderer on the plain parts
      MarkedOverpartition view;
      for (int s : m.base.parts) view.base.parts.push_back({s, false});
      view.marks = m.marks;
      std::cout << render_rows(view) << "rows: " << profile_text(rows) << "\n";
    }
    return kPass;
  }
  auto m = gg_mark(parse_overpartition(o.input));
  if (json_out(o))
    std::cout << to_json(m).dump(2) << "\n";
  else
    std::cout << render_rows(m) << "rows: " << profile_text(row_counts(m)) << "\n";
  return kPass;
}

// ---- biject

MarkedOverpartition read_marked(const std::string& text) {
  if (text.find('/') != std::string::npos) return parse_rows(text);
  return gg_mark(parse_overpartition(text));
}

json marked_json(const MarkedOverpartition& m) {
  json j = to_json(m);
  j["text"] = format_overpartition(m.base);
  j["weight"] = m.base.weight();
  return j;
}

int cmd_biject(const Options& o) {
  ClassParams cp{need(o.k, "--k"), need(o.i, "--i")};
  if (!(cp.k >= cp.i && cp.i >= 1)) throw UsageError("need k >= i >= 1");
  BijectionTrace tr;
  json out = {{"map", o.map}, {"k", cp.k}, {"i", cp.i}};
  const std::string& mp = o.map;
  auto pos = [&] { return need(o.p, "--p"); };
  if (mp == "toggle" || mp == "untoggle") {
    auto in = parse_overpartition(o.input);
    auto r = mp == "toggle" ? fh_toggle(in, cp.k, cp.i) : fh_untoggle(in, cp.k, cp.i);
    out["input"] = format_overpartition(in);
    out["output"] = format_overpartition(r);
  } else if (mp == "halve") {
    auto in = parse_overpartition(o.input);
    out["input"] = format_overpartition(in);
    out["output"] = format_partition(halve(in));
  } else if (mp == "double") {
    auto in = parse_partition(o.input);
    out["input"] = format_partition(in);
    out["output"] = format_overpartition(double_parts(in));
  } else {
    auto in = read_marked(o.input);
    out["input"] = marked_json(in);
    MarkedOverpartition r;
    if (mp == "phi") r = phi_p(in, pos(), cp, &tr);
    else if (mp == "psi") r = psi_p(in, pos(), cp, &tr);
    else if (mp == "phi-chain") r = phi_chain(in, pos(), cp, &tr);
    else if (mp == "psi-chain") r = psi_chain(in, pos(), cp, &tr);
    else if (mp == "theta") r = theta_p(in, pos(), cp, &tr);
    else if (mp == "lambda") r = lambda_p(in, pos(), cp, &tr);
    else if (mp == "theta-chain") r = theta_chain(in, pos(), cp, &tr);
    else if (mp == "lambda-chain") r = lambda_chain(in, pos(), cp, &tr);
    else if (mp == "phi-full" || mp == "theta-full") {
      auto [sp, res] = mp == "phi-full" ? phi_full(in, cp, &tr) : theta_full(in, cp, &tr);
      out["signed_parts"] = sp;
      r = res;
    } else if (mp == "psi-full") r = psi_full(parse_int_list(o.signed_parts), in, cp, &tr);
    else if (mp == "lambda-full") r = lambda_full(parse_int_list(o.signed_parts), in, cp, &tr);
    else throw UsageError("unknown map '" + mp + "'");
    out["output"] = marked_json(r);
    out["trace"] = to_json(tr);
  }
  if (json_out(o)) {
    std::cout << out.dump(2) << "\n";
    return kPass;
  }
  auto text_of = [](const json& j) { return j.is_string() ? j.get<std::string>() : j["text"].get<std::string>(); };
  std::cout << o.map << ": " << text_of(out["input"]) << " -> " << text_of(out["output"]) << "\n";
  if (out.contains("signed_parts")) std::cout << "signed parts: " << out["signed_parts"].dump() << "\n";
  for (auto& s : tr.steps)
    std::cout << "  " << s.name << ": " << format_overpartition(s.before) << " -> " << format_overpartition(s.after)
              << " (" << (s.delta >= 0 ? "+" : "") << s.delta << ")\n";
  if (out["output"].is_object()) std::cout << render_rows(read_marked(text_of(out["output"])));
  return kPass;
}

// ---- verify / bailey

using Task = std::function<VerificationReport()>;

std::vector<std::pair<int, int>> grid(const Options& o, int k_lo, int k_hi, bool strict) {
  std::vector<std::pair<int, int>> out;
  if (o.i && !o.k) throw UsageError("--i needs --k");
  for (int k = o.k.value_or(k_lo); k <= (o.k ? *o.k : k_hi); ++k) {
    int top = strict ? k - 1 : k;
    if (o.i) {
      if (*o.i < 1 || *o.i > k) throw UsageError("need k >= i >= 1");
      out.push_back({k, *o.i});
    } else {
      for (int i = 1; i <= top; ++i) out.push_back({k, i});
    }
  }
  return out;
}

void add_identity_tasks(const Options& o, std::vector<Task>& tasks) {
  if (o.k && *o.k < 2 && (o.tag.empty() || tag_is_summed(tag_from_string(o.tag))))
    throw UsageError("degenerate form: summed identities need k >= 2");
  struct Plan {
    IdentityTag tag;
    int k_hi;
    long T;
  };
  std::vector<Plan> plans = {{IdentityTag::AG, 4, 60},   {IdentityTag::BRESSOUD, 4, 60}, {IdentityTag::OGG, 4, 60},
                             {IdentityTag::AG_X, 3, 40}, {IdentityTag::BRESSOUD_X, 3, 40}, {IdentityTag::OGG_X, 3, 40},
                             {IdentityTag::F_GF, 3, 40}, {IdentityTag::H_GF, 3, 40},     {IdentityTag::JTP, 5, 200}};
  for (auto& pl : plans) {
    if (!o.tag.empty() && tag_from_string(o.tag) != pl.tag) continue;
    int k_lo = pl.tag == IdentityTag::JTP ? 1 : 2;
    long T = o.T.value_or(pl.T);
    for (auto [k, i] : grid(o, k_lo, pl.k_hi, false))
      tasks.push_back([=] { return verify_identity(pl.tag, k, i, T); });
  }
}

void add_class_tasks(const Options& o, std::vector<Task>& tasks, std::shared_ptr<ClassCensus>& census) {
  long T = o.T.value_or(30);
  std::vector<std::vector<int>> profiles;
  std::vector<std::pair<int, int>> ki;
  if (!o.profile.empty()) {
    auto pr = parse_int_list(o.profile);
    profiles.push_back(pr);
    int k = static_cast<int>(pr.size()) + 1;
    if (o.k && *o.k != k) throw UsageError("--profile length must be k-1");
    if (o.i) {
      if (*o.i < 1 || *o.i > k) throw UsageError("need k >= i >= 1");
      ki.push_back({k, *o.i});
    } else {
      for (int i = 1; i <= k; ++i) ki.push_back({k, i});
    }
  } else {
    ki = grid(o, 1, 4, false);
  }
  int top = 0;
  for (auto& [k, i] : ki) {
    auto prs = o.profile.empty() ? profiles_upto(k - 1, 3) : profiles;
    for (auto& pr : prs) {
      if (!pr.empty()) top = std::max(top, pr[0]);
      for (auto tag : {IdentityTag::CLASS_F, IdentityTag::CLASS_G, IdentityTag::CLASS_E, IdentityTag::CLASS_B,
                       IdentityTag::LEM_N1, IdentityTag::LEM_N2}) {
        if (!o.tag.empty() && tag_from_string(o.tag) != tag) continue;
        tasks.push_back([=, &census] { return verify_identity(tag, k, i, T, pr, census.get()); });
      }
    }
  }
  // one shared enumeration, deep enough for the factor products
  census = std::make_shared<ClassCensus>(T + static_cast<long>(top) * top);
}

void add_counting_tasks(const Options& o, std::vector<Task>& tasks) {
  int n_max = o.n_max.value_or(25);
  std::vector<Theorem> ths = {Theorem::T1_1, Theorem::T1_2, Theorem::T1_5};
  if (!o.theorem.empty()) ths = {theorem_from_string(o.theorem)};
  for (auto th : ths)
    for (auto [k, i] : grid(o, 1, 4, false)) tasks.push_back([=] { return verify_counting(th, k, i, n_max); });
}

void add_bijection_tasks(const Options& o, std::vector<Task>& tasks) {
  int n_max = o.n_max.value_or(18);
  for (auto [k, i] : grid(o, 2, 3, false)) tasks.push_back([=] { return verify_bijections(k, i, n_max); });
  tasks.push_back([] { return verify_worked_examples(); });
}

void add_bailey_tasks(const Options& o, std::vector<Task>& tasks) {
  if (o.k && o.i && *o.i == *o.k) throw UsageError("chain undefined for i=k");
  long T = o.T.value_or(40);
  for (auto [k, i] : grid(o, 2, 4, true)) tasks.push_back([=] { return verify_bailey(k, i, T); });
}

std::string params_text(const json& p) {
  std::string s;
  for (auto& [key, v] : p.items()) s += " " + key + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  return s;
}

void print_text(const VerificationReport& r) {
  std::cout << (r.pass ? "PASS " : "FAIL ") << r.tag << params_text(r.params);
  if (r.truncation) std::cout << " T=" << r.truncation;
  if (r.first) {
    std::cout << " | first difference at q^" << r.first->n;
    if (r.first->m >= 0) std::cout << " x^" << r.first->m;
    std::cout << ": " << r.first->lhs.get_str() << " vs " << r.first->rhs.get_str();
    if (!r.first->witness.empty()) std::cout << " (" << r.first->witness << ")";
  }
  std::cout << "\n";
  if (r.kind == "bailey" && r.details.contains("stages"))
    for (auto& s : r.details["stages"])
      std::cout << "    stage " << s["stage"].get<std::string>() << ": relation " << s["relation"].get<std::string>()
                << "\n";
}

int report(const Options& o, const std::vector<VerificationReport>& reps, const json& extra = nullptr) {
  bool all = true;
  for (auto& r : reps) all = all && r.pass;
  if (json_out(o)) {
    json arr = json::array();
    for (auto& r : reps) arr.push_back(to_json(r));
    json j = {{"verdict", all ? "pass" : "fail"}, {"reports", arr}};
    if (!extra.is_null()) j["pairs"] = extra;
    std::cout << j.dump(2) << "\n";
  } else {
    for (auto& r : reps) print_text(r);
    long failed = 0;
    for (auto& r : reps) failed += !r.pass;
    std::cout << reps.size() << " checks, " << failed << " failed\n";
  }
  return all ? kPass : kMismatch;
}

int cmd_verify(const Options& o) {
  static const std::vector<std::string> suites = {"identities", "classes", "counting", "bijections", "bailey", "all"};
  if (std::find(suites.begin(), suites.end(), o.suite) == suites.end()) throw UsageError("unknown suite '" + o.suite + "'");
  bool all = o.suite == "all";
  std::vector<Task> tasks;
  std::shared_ptr<ClassCensus> census;
  if (all || o.suite == "identities") add_identity_tasks(o, tasks);
  if (all || o.suite == "classes") add_class_tasks(o, tasks, census);
  if (all || o.suite == "counting") add_counting_tasks(o, tasks);
  if (all || o.suite == "bijections") add_bijection_tasks(o, tasks);
  if (all || o.suite == "bailey") add_bailey_tasks(o, tasks);
  return report(o, run_parallel(tasks, o.jobs));
}

int cmd_bailey(const Options& o) {
  int k = need(o.k, "--k"), i = need(o.i, "--i");
  if (i == k) throw UsageError("chain undefined for i=k");
  if (!(k > i && i >= 1)) throw UsageError("need k > i >= 1");
  long T = o.T.value_or(40);
  auto rep = verify_bailey(k, i, T);
  json pairs = nullptr;
  if (o.show >= 0) {
    pairs = json::array();
    for (auto& s : run_chain_stages(k, i, std::max(o.show, limit_index(T) + 1), T))
      pairs.push_back({{"stage", s.name}, {"pair", to_json(s.pair, o.show)}});
  }
  int rc = report(o, {rep}, pairs);
  if (!json_out(o) && !pairs.is_null()) std::cout << pairs.dump(2) << "\n";
  return rc;
}

int default_jobs() {
  if (const char* e = std::getenv("GGKIT_JOBS")) {
    try {
      return std::max(1, std::stoi(e));
    } catch (const std::exception&) {
      throw UsageError(std::string("GGKIT_JOBS must be an integer, got '") + e + "'");
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Overpartition and q-series identity toolkit"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", o.jobs, "Worker threads (default: GGKIT_JOBS or 1)")->check(CLI::PositiveNumber);

  auto add_ki = [&](CLI::App* c) {
    c->add_option("--k", o.k, "Row bound k")->check(CLI::PositiveNumber);
    c->add_option("--i", o.i, "Parameter i")->check(CLI::PositiveNumber);
  };
  auto fmt = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* en = app.add_subcommand("enumerate", "List overpartitions (or family members) of n");
  en->add_option("--n", o.n, "Weight")->required();
  en->add_option("--family", o.family, "Family filter: O, P, F, H, A, B, C, D");
  add_ki(en);
  fmt(en);

  auto* mk = app.add_subcommand("mark", "Show the marking array of an overpartition");
  mk->add_option("parts", o.input, "Parts, e.g. 1,1,2~,2")->required();
  mk->add_flag("--gordon", o.gordon, "Treat input as an ordinary partition and use the Gordon marking");
  fmt(mk);

  auto* bj = app.add_subcommand("biject", "Apply one of the class bijections");
  bj->add_option("--map", o.map,
                 "phi, psi, phi-chain, psi-chain, phi-full, psi-full, theta, lambda, theta-chain, lambda-chain, "
                 "theta-full, lambda-full, toggle, untoggle, halve, double")
      ->required();
  bj->add_option("--p", o.p, "First-row position (1-based)");
  bj->add_option("--signed", o.signed_parts, "Signed parts for psi-full/lambda-full, e.g. -4,-2");
  bj->add_option("parts", o.input, "Parts, or rows separated by '/' (row 1 first)")->required();
  add_ki(bj);
  fmt(bj);

  auto* bl = app.add_subcommand("bailey", "Run the Bailey chain and check every stage");
  add_ki(bl);
  bl->add_option("--T", o.T, "Truncation order")->check(CLI::NonNegativeNumber);
  bl->add_option("--show", o.show, "Also print alpha/beta up to this index");
  fmt(bl);

  auto* vf = app.add_subcommand("verify", "Run a verification suite");
  vf->add_option("--suite", o.suite, "identities, classes, counting, bijections, bailey, all");
  add_ki(vf);
  vf->add_option("--T", o.T, "Truncation order")->check(CLI::NonNegativeNumber);
  vf->add_option("--n-max", o.n_max, "Largest weight for counting and bijections")->check(CLI::NonNegativeNumber);
  vf->add_option("--profile", o.profile, "Row profile N1,N2,... for the classes suite");
  vf->add_option("--tag", o.tag, "Restrict to one identity tag");
  vf->add_option("--theorem", o.theorem, "Restrict counting to T1.1, T1.2 or T1.5");
  vf->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  fmt(vf);

  try {
    o.jobs = default_jobs();
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*en) return cmd_enumerate(o);
    if (*mk) return cmd_mark(o);
    if (*bj) return cmd_biject(o);
    if (*bl) return cmd_bailey(o);
    return cmd_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const VerifyUsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const PartitionError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const BijectionError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const BaileyError& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kUsage;
}
