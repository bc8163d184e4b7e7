#include "batchcode/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <thread>

#include "batchcode/aad.hpp"
#include "batchcode/batch.hpp"
#include "batchcode/graph.hpp"
#include "batchcode/history.hpp"
#include "batchcode/io.hpp"
#include "batchcode/simd/kernels.hpp"
#include "batchcode/simulate.hpp"
#include "batchcode/strong.hpp"

namespace batchcode {

namespace {

// Raised for size guards and bad parameters; mapped to exit 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr double kMaxBatches = 5e6;
constexpr int kScanMaxK = 8;
constexpr int kScanMaxN = 24;

int default_jobs() {
    if (const char* env = std::getenv("BATCHCODE_JOBS")) {
        const int j = std::atoi(env);
        if (j >= 1) return j;
    }
    return 1;
}

std::string one_based(const std::vector<int>& xs) {
    std::string s;
    for (std::size_t j = 0; j < xs.size(); ++j) s += (j ? "," : "") + std::to_string(xs[j] + 1);
    return s;
}

std::string sets_text(const std::vector<ColumnSet>& sets) {
    std::string s;
    for (std::size_t j = 0; j < sets.size(); ++j) s += (j ? " " : "") + sets[j].to_string();
    return s.empty() ? "(none)" : s;
}

void require_horizon(int t) {
    if (t < 1 || t > HistoryCollection::kMaxHorizon)
        throw InputError("t must lie in [1, " + std::to_string(HistoryCollection::kMaxHorizon) + "]");
}

double multiset_count(int k, int t) {
    double c = 1;
    for (int j = 1; j <= t; ++j) c = c * (k + j - 1) / j;
    return c;
}

// Shared state of one invocation: the report under construction plus timing.
struct Run {
    Report report;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    GFMatrix matrix(const std::string& path) {
        const auto text = read_file(path);
        report.digests.emplace_back("matrix", fnv1a_digest(text));
        auto g = parse_matrix(text);
        require_column_capacity(g);
        return g;
    }
    std::string text(const std::string& key, const std::string& path) {
        auto t = read_file(path);
        report.digests.emplace_back(key, fnv1a_digest(t));
        return t;
    }
    void param(const std::string& k, const std::string& v) { report.params.emplace_back(k, v); }
    void key(const std::string& k, const std::string& v) { report.keys.emplace_back(k, v); }
    void detail(const std::string& d) { report.details.push_back(d); }

    int finish(std::ostream& out, bool holds, const std::string& yes = "holds", const std::string& no = "fails") {
        report.verdict = holds ? yes : no;
        report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out << format_report(report);
        return holds ? kHolds : kFails;
    }
};

// Self-check failures are bugs, not verdicts.
void self_check(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("self-check failed: " + what);
}

struct Options {
    std::string matrix, collection, services, family, graph, events, requests, out, services_out, witness_out, policy, line;
    int t = 0, m = 0, L = 0, q = 0, position = 0, jobs = 1;
    std::size_t random_steps = 0;
    std::uint64_t seed = 1;
    bool reverse = false, adversarial = false;
};

int cmd_enum_recovery(const Options& o, std::ostream& out) {
    Run run;
    run.report.property = "minimal-recovery-sets";
    const auto g = run.matrix(o.matrix);
    if (o.position < 0 || o.position > g.rows()) throw InputError("position out of range");
    for (int i = 0; i < g.rows(); ++i) {
        if (o.position && i != o.position - 1) continue;
        const auto sets = enumerate_minimal(g, i);
        run.key("count." + std::to_string(i + 1), std::to_string(sets.size()));
        for (const auto& rs : sets) {
            std::string coeff;
            for (auto c : rs.coefficients) coeff += (coeff.empty() ? "" : ",") + std::to_string(c);
            self_check(is_recovery_set(g, i, rs.columns) && is_minimal(g, i, rs.columns), rs.to_string());
            run.detail(rs.to_string() + "  coefficients " + coeff);
        }
    }
    return run.finish(out, true, "enumerated");
}

int cmd_check_batch(const Options& o, std::ostream& out) {
    Run run;
    run.report.property = "batch";
    const auto g = run.matrix(o.matrix);
    if (o.t < 1) throw InputError("t must be at least 1");
    if (multiset_count(g.rows(), o.t) > kMaxBatches) throw InputError("too many batches for k and t");
    run.param("t", std::to_string(o.t));
    RecoveryTable table(g, o.jobs);
    const auto v = check_batch(table, o.t, o.jobs);
    run.key("batches_checked", std::to_string(v.batches_checked));
    run.detail("batches checked: " + std::to_string(v.batches_checked));
    if (v.counterexample) {
        self_check(!serve_batch(table, *v.counterexample), "counterexample is servable");
        run.detail("counterexample batch " + v.counterexample->to_string() + " has no disjoint recovery sets");
        run.key("counterexample", one_based(v.counterexample->items));
    }
    return run.finish(out, v.holds);
}

int cmd_check_online(const Options& o, std::ostream& out) {
    Run run;
    run.report.property = "online";
    const auto g = run.matrix(o.matrix);
    require_horizon(o.t);
    run.param("t", std::to_string(o.t));
    RecoveryTable table(g, o.jobs);
    OnlineOptions opts;
    opts.reverse_candidates = o.reverse;
    const auto v = check_online(table, o.t, opts);
    run.key("states", std::to_string(v.states_explored));
    if (v.online) {
        if (v.witness) {
            self_check(is_prefix_closed(*v.witness) && has_extension_property(*v.witness, table).holds &&
                           members_are_minimal(*v.witness, table),
                       "online witness");
            run.detail("witness: prefix-closed t-extendable collection with " + std::to_string(v.witness->size()) +
                       " sequences");
            run.key("witness_members", std::to_string(v.witness->size()));
            if (!o.witness_out.empty()) write_file(o.witness_out, serialize_history_collection(*v.witness, table));
        }
    } else {
        run.detail("adversary opens with request " + std::to_string(v.adversary_first_request + 1));
        run.key("adversary_first_request", std::to_string(v.adversary_first_request + 1));
        if (v.fixed_losing_prefixes.empty()) {
            run.detail("no fixed losing prefix within the scan bound; the adversary must adapt");
        } else {
            run.detail("shortest fixed losing prefixes (every serving leaves some next request unservable):");
            std::string all;
            for (std::size_t j = 0; j < v.fixed_losing_prefixes.size(); ++j) {
                const auto& p = v.fixed_losing_prefixes[j];
                self_check(verify_losing_prefix(table, p), "losing prefix " + one_based(p));
                if (j < 20) run.detail("  " + one_based(p));
                all += (j ? ";" : "") + one_based(p);
            }
            run.key("losing_prefixes", all);
        }
    }
    if (!o.line.empty()) {
        const auto reqs = parse_request_list(o.line);
        for (int r : reqs)
            if (r >= g.rows()) throw InputError("line request out of range");
        if (reqs.size() > static_cast<std::size_t>(o.t)) throw InputError("line longer than t");
        const auto answers = adversary_line(table, o.t, reqs);
        if (answers) {
            run.detail("adversary line " + one_based(reqs) + " wins when the server answers " + sets_text(*answers));
            run.key("adversary_line", sets_text(*answers));
        } else {
            run.detail("adversary line " + one_based(reqs) + " is not winning along any server answers");
            run.key("adversary_line", "none");
        }
    }
    return run.finish(out, v.online);
}

int cmd_check_async(const Options& o, std::ostream& out) {
    Run run;
    run.report.property = "asynchronous";
    const auto g = run.matrix(o.matrix);
    require_horizon(o.t);
    run.param("t", std::to_string(o.t));
    RecoveryTable table(g, o.jobs);
    const auto v = check_asynchronous(table, o.t);
    run.key("histories_total", std::to_string(v.histories_total));
    run.key("histories_surviving", std::to_string(v.histories_surviving));
    run.detail("histories: " + std::to_string(v.histories_total) + " total, " + std::to_string(v.histories_surviving) +
               " in the greatest subset-closed t-extendable collection");
    if (v.first_pruned) {
        run.detail("first pruned history " + history_to_string(*v.first_pruned) + " cannot serve request " +
                   std::to_string(v.first_pruned_request + 1));
        run.key("first_pruned", history_to_string(*v.first_pruned));
        run.key("first_pruned_request", std::to_string(v.first_pruned_request + 1));
    }
    if (v.witness) {
        self_check(is_subset_closed(*v.witness) && has_extension_property(*v.witness, table).holds, "async witness");
        if (!o.witness_out.empty()) write_file(o.witness_out, serialize_history_collection(*v.witness, table));
    }
    return run.finish(out, v.asynchronous);
}

StrongCollection load_collection(Run& run, const GFMatrix& g, const std::string& key, const std::string& path,
                                 bool require_minimal) {
    auto s = parse_services(run.text(key, path), g.rows());
    if (auto bad = first_invalid_service(g, s, require_minimal))
        throw InputError("entry " + s[*bad].to_string() + " is not a " + (require_minimal ? "minimal " : "") +
                         "recovery set for its request");
    return s;
}

int cmd_check_strong(const Options& o, std::ostream& out) {
    Run run;
    run.report.property = "strongly-asynchronous";
    const auto g = run.matrix(o.matrix);
    require_horizon(o.t);
    run.param("t", std::to_string(o.t));
    const auto r = load_collection(run, g, "collection", o.collection, true);
    RecoveryTable table(g, o.jobs);
    const auto v = check_strongly_async(table, r, o.t);
    run.detail("collection members: " + std::to_string(member_sets(r).size()) + ", disjoint families checked: " +
               std::to_string(v.families_checked));
    if (!v.holds) {
        run.detail("members " + sets_text(v.blocking) + " leave request " + std::to_string(v.request + 1) +
                   " without a disjoint member");
        run.key("blocking", sets_text(v.blocking));
        run.key("blocked_request", std::to_string(v.request + 1));
    }
    return run.finish(out, v.holds);
}

int cmd_check_ml(const Options& o, std::ostream& out) {
    Run run;
    run.report.property = "mL-strongly-asynchronous";
    const auto g = run.matrix(o.matrix);
    if (o.m < 1 || o.L < 1) throw InputError("m and L must be at least 1");
    run.param("m", std::to_string(o.m));
    run.param("L", std::to_string(o.L));
    const auto s = load_collection(run, g, "services", o.services, false);
    const auto v = check_mL_strong(s, o.m, o.L);
    for (int i = 0; i < s.k(); ++i) run.key("services." + std::to_string(i + 1), std::to_string(s.count_for(i)));
    run.key("max_exclusion", std::to_string(v.max_exclusion));
    run.key("derived_t", std::to_string(derive_t(o.m, o.L)));
    run.detail("largest exclusion count " + std::to_string(v.max_exclusion) + "; t = ceil(m/L) = " +
               std::to_string(derive_t(o.m, o.L)));
    if (v.short_request >= 0)
        run.detail("request " + std::to_string(v.short_request + 1) + " has only " + std::to_string(v.short_count) +
                   " services");
    if (v.excluder)
        run.detail("service " + v.excluder->to_string() + " excludes " + std::to_string(v.exclusion) +
                   " services for request " + std::to_string(v.excluded_request + 1));
    return run.finish(out, v.holds);
}

int cmd_search_ml(const Options& o, std::ostream& out) {
    Run run;
    run.report.property = "best-mL";
    const auto g = run.matrix(o.matrix);
    RecoveryTable table(g, o.jobs);
    MLSearchResult r;
    try {
        r = search_best_mL(table);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    self_check(r.t == 0 || check_mL_strong(r.witness, r.m, r.L).holds, "search witness");
    run.key("t", std::to_string(r.t));
    run.key("m", std::to_string(r.m));
    run.key("L", std::to_string(r.L));
    run.key("m_ge_2L_plus_1", r.reaches_2L_plus_1 ? "yes" : "no");
    run.key("nodes", std::to_string(r.nodes));
    run.detail("best ceil(m/L) = " + std::to_string(r.t) + " with m = " + std::to_string(r.m) + ", L = " +
               std::to_string(r.L));
    run.detail(std::string("a collection with m >= 2L+1 ") + (r.reaches_2L_plus_1 ? "exists" : "does not exist"));
    for (const auto& s : r.witness.services()) run.detail("  " + s.to_string());
    return run.finish(out, r.t >= 1, "found", "none");
}

SubspaceFamily load_family(Run& run, const std::string& path) { return parse_family(run.text("family", path)); }

void describe_aad(Run& run, const AADVerdict& v) {
    if (v.holds) return;
    run.key("reason", v.reason);
    if (v.reason == "coset")
        run.detail("coset of member " + std::to_string(v.member + 1) + " with representative index " +
                   std::to_string(v.coset_rep) + " meets " + std::to_string(v.count) + " other members");
    else if (v.reason == "skew")
        run.detail("members " + std::to_string(v.member + 1) + " and " + std::to_string(v.other + 1) + " meet nontrivially");
    else if (v.reason == "overlap")
        run.detail("member " + std::to_string(v.member + 1) + " meets " + std::to_string(v.count) + " other members");
    else
        run.detail("ambient dimension below 2d+1");
}

int cmd_check_aad(const Options& o, std::ostream& out, bool star) {
    Run run;
    run.report.property = star ? "L-AAD*" : "L-AAD";
    const auto f = load_family(run, o.family);
    try {
        if (star && o.L == 0) {
            const int L = min_L_star(f);
            run.key("min_L", std::to_string(L));
            run.detail("smallest L: " + std::to_string(L));
            return run.finish(out, true, "computed");
        }
        if (o.L < 1) throw InputError("L must be at least 1");
        run.param("L", std::to_string(o.L));
        const auto v = star ? check_aad_star(f, o.L) : check_aad(f, o.L);
        describe_aad(run, v);
        return run.finish(out, v.holds);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

int cmd_build_aad(const Options& o, std::ostream& out) {
    Run run;
    run.report.property = "aad-coset-code";
    const auto f = load_family(run, o.family);
    CosetCode c;
    try {
        c = build_coset_code(f);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    self_check(check_mL_strong(c.services, c.m, c.L).holds, "coset code (m,L)");
    const SystematicCode sys(c.matrix);
    for (const auto& s : c.services.services()) self_check(is_simple(sys, make_recovery_set(c.matrix, s.request, s.columns)), "simple");
    run.key("k", std::to_string(c.k));
    run.key("N", std::to_string(c.parity));
    run.key("n", std::to_string(c.matrix.cols()));
    run.key("m", std::to_string(c.m));
    run.key("L", std::to_string(c.L));
    run.key("t", std::to_string(c.t));
    const int direct = check_mL_strong(c.services, c.m, c.m).max_exclusion;
    run.key("max_exclusion", std::to_string(direct));
    run.detail("largest exclusion count by direct counting: " + std::to_string(direct));
    run.detail("[" + std::to_string(c.matrix.cols()) + "," + std::to_string(c.k) + "] binary code, N = " +
               std::to_string(c.parity) + " cosets, (m,L) = (" + std::to_string(c.m) + "," + std::to_string(c.L) +
               "), t = " + std::to_string(c.t));
    if (!o.out.empty()) write_file(o.out, serialize_matrix(c.matrix));
    if (!o.services_out.empty()) write_file(o.services_out, serialize_services(c.services));
    return run.finish(out, true, "built");
}

void describe_graph(Run& run, const std::string& label, const GraphVerdict& v) {
    if (v.holds) {
        run.detail(label + ": all conditions hold");
        return;
    }
    std::string d = label + ": condition " + std::to_string(v.condition) + " fails";
    if (v.condition == 1)
        d += " (point " + std::to_string(v.point + 1) + " has degree " + std::to_string(v.count) + ")";
    else if (v.other < 0)
        d += " (edge {" + std::to_string(v.point + 1) + ",B" + std::to_string(v.block + 1) + "} lies in " +
             std::to_string(v.count) + " 4-cycles)";
    else
        d += " (edge {" + std::to_string(v.point + 1) + ",B" + std::to_string(v.block + 1) + "}, point " +
             std::to_string(v.other + 1) + ": " + std::to_string(v.count) + " 3-paths)";
    run.detail(d);
}

int cmd_check_graph(const Options& o, std::ostream& out) {
    Run run;
    run.report.property = "graph-mL-strong";
    const auto gr = parse_graph(run.text("graph", o.graph));
    if (o.m < 1 || o.L < 1) throw InputError("m and L must be at least 1");
    run.param("m", std::to_string(o.m));
    run.param("L", std::to_string(o.L));
    const auto v = check_graph_conditions(gr, o.m, o.L);
    describe_graph(run, "graph conditions", v);
    const bool c4free = is_c4_free(gr);
    run.key("c4_free", c4free ? "yes" : "no");
    if (c4free) {
        const auto th = check_c4free_conditions(gr, o.m, o.L);
        describe_graph(run, "theta form", th);
        self_check(th.holds == v.holds, "theta form agrees");
    }
    const auto g = girth(gr);
    run.key("girth", g ? std::to_string(*g) : "inf");
    const bool direct = check_mL_strong(edge_services(gr), o.m, o.L).holds;
    run.key("direct_count", direct ? "holds" : "fails");
    run.detail(std::string("direct exclusion counting on edge services: ") + (direct ? "holds" : "fails"));
    if (v.degenerate_blocks) run.detail("note: some parity vertex has degree 1 (repetition column)");
    // The conditions are sufficient; without 4-cycles they are also necessary.
    self_check(!v.holds || direct, "conditions imply direct counting");
    return run.finish(out, v.holds);
}

int cmd_build_graph(const Options& o, std::ostream& out) {
    Run run;
    run.report.property = "graph-code";
    const auto gr = parse_graph(run.text("graph", o.graph));
    const auto pair = build_graph_code(gr);
    run.key("n", std::to_string(pair.code.n()));
    run.key("k", std::to_string(pair.code.k()));
    const auto g = girth(gr);
    run.key("girth", g ? std::to_string(*g) : "inf");
    run.key("c4_free", is_c4_free(gr) ? "yes" : "no");
    run.detail("[" + std::to_string(pair.code.n()) + "," + std::to_string(pair.code.k()) + "] systematic binary code");
    if (!o.out.empty())
        write_file(o.out, serialize_matrix(pair.code.matrix()));
    else
        run.detail("matrix:\n" + serialize_matrix(pair.code.matrix()));
    if (!o.services_out.empty()) write_file(o.services_out, serialize_services(edge_services(gr)));
    return run.finish(out, true, "built");
}

int cmd_gen_pg(const Options& o, std::ostream& out) {
    Run run;
    run.report.property = "pg-incidence";
    run.param("q", std::to_string(o.q));
    BipartiteGraph g(1, 0, {});
    try {
        g = generate_pg_incidence(o.q);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    run.key("points", std::to_string(g.points()));
    run.key("lines", std::to_string(g.blocks()));
    run.key("girth", std::to_string(*girth(g)));
    if (!o.out.empty())
        write_file(o.out, serialize_graph(g));
    else
        out << serialize_graph(g);
    return run.finish(out, true, "generated");
}

int cmd_simulate(const Options& o, std::ostream& out) {
    Run run;
    run.report.property = "simulation";
    const auto g = run.matrix(o.matrix);
    if (o.t < 1) throw InputError("t must be at least 1");
    run.param("t", std::to_string(o.t));
    RecoveryTable table(g, o.jobs);
    Policy policy = singleton_first_policy();
    if (!o.collection.empty())
        policy = restricted_policy(load_collection(run, g, "collection", o.collection, true));
    else if (!o.policy.empty()) {
        try {
            policy = policy_by_name(o.policy, table, std::min(o.t, HistoryCollection::kMaxHorizon));
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }
    run.param("policy", policy.name);

    const int modes = !o.requests.empty() + !o.events.empty() + (o.random_steps > 0) + o.adversarial;
    if (modes != 1) throw InputError("give exactly one of --requests, --events, --random, --adversarial");

    if (!o.requests.empty()) {
        const auto reqs = parse_request_list(o.requests);
        for (int r : reqs)
            if (r >= g.rows()) throw InputError("request out of range");
        if (static_cast<int>(reqs.size()) > o.t) throw InputError("more requests than t");
        const auto tr = simulate_online(table, policy, reqs, o.t);
        for (const auto& s : tr.steps)
            run.detail("request " + std::to_string(s.request + 1) + " -> " + (s.chosen ? s.chosen->to_string() : "unservable"));
        if (!tr.success) run.key("failed_at", std::to_string(tr.failed_at + 1));
        return run.finish(out, tr.success, "served", "failed");
    }
    if (o.adversarial) {
        const auto bad = adversarial_search(table, policy, o.t);
        if (bad) {
            run.detail("policy fails on " + one_based(*bad));
            run.key("failing_sequence", one_based(*bad));
        } else {
            run.detail("policy serves every request sequence of length up to t");
        }
        return run.finish(out, !bad, "survives", "falsified");
    }
    AsyncTrace tr;
    if (!o.events.empty()) {
        const auto evs = parse_events(run.text("events", o.events));
        for (const auto& e : evs)
            if (e.request >= g.rows()) throw InputError("event request out of range");
        try {
            tr = simulate_async(table, policy, evs, o.t);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    } else {
        tr = simulate_random(table, policy, o.t, o.random_steps, o.seed);
        run.key("seed", std::to_string(o.seed));
    }
    for (const auto& en : tr.entries) {
        std::string line = serialize_events({en.event});
        line.pop_back();
        line += "  # " + outcome_name(en.outcome);
        if (en.outcome == Outcome::Served) line += " " + en.chosen.to_string();
        run.detail(line);
    }
    run.key("rejected", std::to_string(tr.rejected));
    run.key("max_active", std::to_string(tr.max_active));
    if (tr.deadlock) {
        std::vector<ColumnSet> act;
        for (const auto& a : tr.active_at_deadlock) act.push_back(a.columns);
        run.detail("deadlock: request " + std::to_string(tr.deadlock_request + 1) + " cannot be served while " +
                   sets_text(act) + " are active");
        run.key("deadlock_request", std::to_string(tr.deadlock_request + 1));
        run.key("deadlock_active", sets_text(act));
    }
    return run.finish(out, !tr.deadlock, "no-deadlock", "deadlock");
}

int cmd_hierarchy_scan(const Options& o, std::ostream& out) {
    Run run;
    run.report.property = "hierarchy";
    const auto g = run.matrix(o.matrix);
    if (g.rows() > kScanMaxK || g.cols() > kScanMaxN)
        throw InputError("hierarchy scan needs k <= " + std::to_string(kScanMaxK) + " and n <= " + std::to_string(kScanMaxN));
    RecoveryTable table(g, o.jobs);
    const int limit = std::min(g.cols(), HistoryCollection::kMaxHorizon);
    int batch = 0;
    for (int t = 1; t <= limit && multiset_count(g.rows(), t) <= kMaxBatches; ++t) {
        if (!check_batch(table, t, o.jobs).holds) break;
        batch = t;
    }
    const int online = max_online_t(table, std::min(limit, std::max(batch, 1)));
    const int async = max_async_t(table, std::max(online, 1));
    int strong = 0;
    for (int t = 1; t <= async; ++t) {
        if (!search_strong_collection(table, t).found) break;
        strong = t;
    }
    std::optional<MLSearchResult> ml;
    if (g.rows() <= MLSearchLimits{}.max_k && g.cols() <= MLSearchLimits{}.max_n) ml = search_best_mL(table);

    const std::vector<std::pair<std::string, int>> rows = {
        {"batch", batch}, {"online", online}, {"asynchronous", async}, {"strong", strong}};
    bool monotone = true;
    int prev = batch;
    for (const auto& [name, v] : rows) {
        run.detail(name + ": " + std::to_string(v));
        run.key(name, std::to_string(v));
        monotone = monotone && v <= prev;
        prev = v;
    }
    if (ml) {
        run.detail("mL-strong: " + std::to_string(ml->t) + " (m=" + std::to_string(ml->m) + ", L=" + std::to_string(ml->L) + ")");
        run.key("mL_strong", std::to_string(ml->t));
        monotone = monotone && ml->t <= prev;
    } else {
        run.detail("mL-strong: skipped (needs k <= 4 and n <= 10)");
        run.key("mL_strong", "skipped");
    }
    run.key("monotone", monotone ? "yes" : "no");
    return run.finish(out, monotone, "monotone", "not-monotone");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Linear batch codes: recovery sets, online, asynchronous and strong serving"};
    app.require_subcommand(1);
    Options o;
    o.jobs = default_jobs();

    auto matrix = [&](CLI::App* s) { s->add_option("--matrix", o.matrix, "generator matrix file")->required(); };
    auto t_opt = [&](CLI::App* s) { s->add_option("--t", o.t, "number of requests")->required(); };
    auto jobs = [&](CLI::App* s) { s->add_option("--jobs", o.jobs, "worker threads (default BATCHCODE_JOBS or 1)"); };

    std::vector<std::pair<CLI::App*, std::function<int()>>> cmds;
    auto add = [&](const char* name, const char* help, std::function<void(CLI::App*)> setup, std::function<int()> fn) {
        auto* s = app.add_subcommand(name, help);
        setup(s);
        cmds.emplace_back(s, std::move(fn));
    };

    add("enum-recovery", "list minimal recovery sets",
        [&](CLI::App* s) {
            matrix(s);
            s->add_option("--position", o.position, "only this position (1-based)");
        },
        [&] { return cmd_enum_recovery(o, out); });
    add("check-batch", "decide the t-batch property",
        [&](CLI::App* s) { matrix(s), t_opt(s), jobs(s); }, [&] { return cmd_check_batch(o, out); });
    add("check-online", "decide the t-online property",
        [&](CLI::App* s) {
            matrix(s), t_opt(s), jobs(s);
            s->add_flag("--reverse", o.reverse, "explore recovery sets in reverse order");
            s->add_option("--witness-out", o.witness_out, "write the witness collection");
            s->add_option("--line", o.line, "adversary request line to probe, such as 1,2,1");
        },
        [&] { return cmd_check_online(o, out); });
    add("check-async", "decide the t-asynchronous property",
        [&](CLI::App* s) {
            matrix(s), t_opt(s), jobs(s);
            s->add_option("--witness-out", o.witness_out, "write the witness collection");
        },
        [&] { return cmd_check_async(o, out); });
    add("check-strong", "check a collection for the t-strongly asynchronous property",
        [&](CLI::App* s) {
            matrix(s), t_opt(s);
            s->add_option("--collection", o.collection, "recovery collection file")->required();
        },
        [&] { return cmd_check_strong(o, out); });
    add("check-ml-strong", "check a service collection for (m,L)-strength",
        [&](CLI::App* s) {
            matrix(s);
            s->add_option("--services", o.services, "service collection file")->required();
            s->add_option("--m", o.m)->required();
            s->add_option("--L", o.L)->required();
        },
        [&] { return cmd_check_ml(o, out); });
    add("search-ml", "search service collections for the best ceil(m/L)",
        [&](CLI::App* s) { matrix(s), jobs(s); }, [&] { return cmd_search_ml(o, out); });
    add("check-aad", "check the L-AAD property of a subspace family",
        [&](CLI::App* s) {
            s->add_option("--family", o.family)->required();
            s->add_option("--L", o.L)->required();
        },
        [&] { return cmd_check_aad(o, out, false); });
    add("check-aad-star", "check the L-AAD* property (or find the smallest L)",
        [&](CLI::App* s) {
            s->add_option("--family", o.family)->required();
            s->add_option("--L", o.L, "omit to compute the smallest L");
        },
        [&] { return cmd_check_aad(o, out, true); });
    add("build-aad-code", "build the coset code of a family",
        [&](CLI::App* s) {
            s->add_option("--family", o.family)->required();
            s->add_option("--out", o.out, "write the generator matrix");
            s->add_option("--services-out", o.services_out, "write the simple services");
        },
        [&] { return cmd_build_aad(o, out); });
    add("check-graph", "check the graph conditions for (m,L)-strength",
        [&](CLI::App* s) {
            s->add_option("--graph", o.graph)->required();
            s->add_option("--m", o.m)->required();
            s->add_option("--L", o.L)->required();
        },
        [&] { return cmd_check_graph(o, out); });
    add("build-graph-code", "build [I | B] from a bipartite graph",
        [&](CLI::App* s) {
            s->add_option("--graph", o.graph)->required();
            s->add_option("--out", o.out, "write the generator matrix");
            s->add_option("--services-out", o.services_out, "write the edge services");
        },
        [&] { return cmd_build_graph(o, out); });
    add("gen-pg", "point-line incidence graph of PG(2,q)",
        [&](CLI::App* s) {
            s->add_option("--q", o.q)->required();
            s->add_option("--out", o.out, "write the graph");
        },
        [&] { return cmd_gen_pg(o, out); });
    add("simulate", "run a serving policy on requests or events",
        [&](CLI::App* s) {
            matrix(s), t_opt(s);
            s->add_option("--policy", o.policy, "singleton-first, lexicographic, largest-remaining, game-optimal");
            s->add_option("--collection", o.collection, "restrict the policy to this collection");
            s->add_option("--requests", o.requests, "online request list such as 1,2,1");
            s->add_option("--events", o.events, "event stream file");
            s->add_option("--random", o.random_steps, "random stream with this many events");
            s->add_option("--seed", o.seed, "seed for --random");
            s->add_flag("--adversarial", o.adversarial, "search for a request sequence the policy fails on");
        },
        [&] { return cmd_simulate(o, out); });
    add("hierarchy-scan", "largest parameter for each property of the hierarchy",
        [&](CLI::App* s) { matrix(s), jobs(s); }, [&] { return cmd_hierarchy_scan(o, out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return kHolds;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }
    if (o.jobs < 1) o.jobs = 1;
    o.jobs = std::min<int>(o.jobs, std::max(1U, std::thread::hardware_concurrency()) * 4);

    try {
        for (auto& [s, fn] : cmds)
            if (s->parsed()) return fn();
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace batchcode
