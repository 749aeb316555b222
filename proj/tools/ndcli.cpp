// Command-line driver: Newton-diagram singularity invariants, Durfee-type
// bound checks, scaling scans and the combinatorial lemma suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nd/ehrhart.hpp"
#include "nd/harness.hpp"

using namespace nd;

namespace {

struct GlobalOptions {
    std::string format = "text";
    std::uint64_t seed = 20240817;
    long budget = kDefaultBudget;
    std::string out_path;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const GlobalOptions& opts, const std::string& payload) {
    if (opts.out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(opts.out_path);
    if (!out) throw InputError("cannot open output file: " + opts.out_path);
    out << payload;
    if (!payload.empty() && payload.back() != '\n') out << "\n";
}

std::pair<long, long> parse_range(const std::string& text) {
    auto sep = text.find("..");
    if (sep == std::string::npos)
        throw InputError("range must look like a..b, got: " + text);
    try {
        long lo = std::stol(text.substr(0, sep));
        long hi = std::stol(text.substr(sep + 2));
        return {lo, hi};
    } catch (const std::exception&) {
        throw InputError("range must look like a..b, got: " + text);
    }
}

HarnessOptions harness_options(const GlobalOptions& g) {
    HarnessOptions h;
    h.seed = g.seed;
    h.budget = Int(g.budget);
    return h;
}

std::string format_reports(const GlobalOptions& opts,
                           const std::vector<InvariantReport>& reports) {
    std::ostringstream os;
    if (opts.format == "csv") {
        os << kCsvHeader << "\n";
        for (const auto& rep : reports) os << report_to_csv_row(rep) << "\n";
    } else if (opts.format == "json") {
        os << "[";
        for (size_t i = 0; i < reports.size(); ++i)
            os << (i ? "," : "") << report_to_json(reports[i]);
        os << "]";
    } else {
        for (const auto& rep : reports) os << report_to_text(rep);
    }
    return os.str();
}

std::string format_scan(const GlobalOptions& opts, const ScanSeries& series) {
    if (opts.format == "csv") return format_reports(opts, series.reports);
    nlohmann::json j;
    j["lt_mu"] = series.lt_mu.get_str();
    j["lt_pg"] = series.lt_pg.get_str();
    j["quotient"] = series.quotient.get_str();
    j["cnr"] = series.cnr_value.get_str();
    j["quotient_equals_cnr"] = series.quotient_equals_cnr;
    j["quotient_exceeds_cnr"] = series.quotient_exceeds_cnr;
    j["all_equal_diagrams"] = series.all_equal_diagrams;
    if (series.d0) j["d0"] = *series.d0;
    if (series.fitted_pg_leading) j["fitted_pg_leading"] = series.fitted_pg_leading->get_str();
    if (opts.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& rep : series.reports)
            rows.push_back(nlohmann::json::parse(report_to_json(rep)));
        j["reports"] = rows;
        return j.dump();
    }
    std::ostringstream os;
    for (const auto& rep : series.reports) os << report_to_text(rep);
    os << "leading terms: l.t.(mu) = " << series.lt_mu.get_str()
       << ", l.t.(pg) = " << series.lt_pg.get_str()
       << ", quotient = " << series.quotient.get_str() << " vs C_{n,r} = "
       << series.cnr_value.get_str() << "\n";
    os << "equal diagrams: " << (series.all_equal_diagrams ? "yes" : "no")
       << "; quotient " << (series.quotient_equals_cnr
                                ? "equals C_{n,r} (sharp direction)"
                                : series.quotient_exceeds_cnr ? "exceeds C_{n,r}"
                                                              : "below C_{n,r}")
       << "\n";
    if (series.d0)
        os << "d0 = " << *series.d0 << " (margin positive from here through the range)\n";
    else
        os << "d0 not reached within the scanned range\n";
    return os.str();
}

int run(int argc, char** argv) {
    CLI::App app{"Newton-diagram invariants of isolated singularities: exact mu, pg,\n"
                 "mixed covolumes, Ehrhart data and Durfee-type bound checks"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions gopts;
    app.add_option("--format", gopts.format, "Output format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--seed", gopts.seed, "Seed for randomized corpora");
    app.add_option("--budget", gopts.budget, "Enumeration budget in cells");
    app.add_option("--out", gopts.out_path, "Write output to a file instead of stdout");

    std::string input_path;
    std::string range_text = "1..6";
    std::string m_range_text = "2..8";
    long n_max = 8, r_max = 6, corpus = 40;

    auto* cmd_invariants = app.add_subcommand("invariants", "Full invariant report for a diagram or tuple");
    cmd_invariants->add_option("file", input_path, "Diagram/tuple JSON")->required();

    auto* cmd_durfee = app.add_subcommand("durfee", "Durfee-type verdict for a diagram or tuple");
    cmd_durfee->add_option("file", input_path, "Diagram/tuple JSON")->required();

    auto* cmd_scan = app.add_subcommand("scan", "Scaling scan d -> (mu, pg, margin)");
    cmd_scan->add_option("file", input_path, "Diagram/tuple JSON")->required();
    cmd_scan->add_option("--range", range_text, "Scale range a..b");

    auto* cmd_thm2 = app.add_subcommand("thm2", "Strengthened hypersurface bound scan");
    cmd_thm2->add_option("file", input_path, "Diagram JSON")->required();
    cmd_thm2->add_option("--range", range_text, "Scale range a..b");

    auto* cmd_cex = app.add_subcommand("counterexample",
                                       "Tetrahedron family violating mu >= 6 pg");
    cmd_cex->add_option("--m-range", m_range_text, "Range of m, a..b");

    auto* cmd_lemma = app.add_subcommand("lemma-suite", "Stirling/C_{n,r}/volume checks");
    cmd_lemma->add_option("--n-max", n_max, "Largest n in the grid");
    cmd_lemma->add_option("--r-max", r_max, "Largest r in the grid");
    cmd_lemma->add_option("--corpus", corpus, "Random diagram corpus size");

    auto* cmd_covol = app.add_subcommand("mixed-covol", "Mixed covolume table of a tuple");
    cmd_covol->add_option("file", input_path, "Tuple JSON")->required();

    auto* cmd_ehrhart = app.add_subcommand("ehrhart",
                                           "Ehrhart data of Conv(Gamma^- ) and pg leading terms");
    cmd_ehrhart->add_option("file", input_path, "Diagram JSON")->required();

    CLI11_PARSE(app, argc, argv);
    HarnessOptions hopts = harness_options(gopts);

    if (cmd_invariants->parsed() || cmd_durfee->parsed()) {
        DiagramTuple t = tuple_from_json_text(read_file(input_path));
        InvariantReport rep = durfee_check(IcisInput{t}, hopts);
        if (cmd_invariants->parsed() && gopts.format == "text") {
            std::ostringstream os;
            os << report_to_text(rep);
            if (t.r == 1) {
                const NewtonDiagram& g = t.diagrams[0];
                os << "  multiplicity p = " << multiplicity(g).get_str() << "\n";
                for (int j = 0; j <= g.ambient_dim(); ++j)
                    os << "  Vol_" << j << "(Gamma^-) = " << vol_j_sum(g, j).get_str()
                       << "\n";
                os << "  Vol_" << g.ambient_dim() - 1
                   << "(Gamma)  = " << facet_total_volume(g).get_str() << "\n";
                auto [lead, second] = pg_leading_terms(g);
                os << "  pg leading terms: " << lead.get_str() << ", "
                   << second.get_str() << "\n";
            } else {
                ConjectureReport conj = conjecture_report(IcisInput{t}, hopts);
                os << "  CONJECTURAL strengthening (reported, never asserted):\n"
                   << "    mu - C_{n,r} pg = " << conj.lhs.get_str() << "\n"
                   << "    rhs (coVol normalization) = " << conj.rhs.get_str() << "\n"
                   << "    lhs > rhs: " << (conj.lhs_greater ? "yes" : "no") << "\n";
            }
            emit(gopts, os.str());
        } else {
            emit(gopts, format_reports(gopts, {rep}));
        }
        return 0;
    }
    if (cmd_scan->parsed()) {
        auto [lo, hi] = parse_range(range_text);
        DiagramTuple t = tuple_from_json_text(read_file(input_path));
        emit(gopts, format_scan(gopts, scaling_scan(IcisInput{t}, lo, hi, hopts)));
        return 0;
    }
    if (cmd_thm2->parsed()) {
        auto [lo, hi] = parse_range(range_text);
        NewtonDiagram g = diagram_from_json_text(read_file(input_path));
        Thm2Series series = theorem2_check(g, lo, hi, hopts);
        std::ostringstream os;
        if (gopts.format == "csv") {
            os << "k,mu,mu_pt,pt_included,correction,pg,margin,holds\n";
            for (const auto& row : series.rows)
                os << row.k << "," << row.mu.get_str() << "," << row.mu_pt.get_str()
                   << "," << (row.pt_included ? 1 : 0) << "," << row.correction.get_str()
                   << "," << row.pg.get_str() << "," << row.margin.get_str() << ","
                   << (row.holds ? 1 : 0) << "\n";
        } else if (gopts.format == "json") {
            nlohmann::json j;
            j["homogeneous"] = series.homogeneous;
            j["equality_throughout"] = series.equality_throughout;
            j["tangent_cone_convention"] = series.tangent_cone_convention;
            if (series.leading_margin) j["leading_margin"] = series.leading_margin->get_str();
            if (series.k0) j["k0"] = *series.k0;
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& row : series.rows) {
                nlohmann::json rj;
                rj["k"] = row.k;
                rj["mu"] = row.mu.get_str();
                rj["mu_pt"] = row.mu_pt.get_str();
                rj["pt_included"] = row.pt_included;
                rj["correction"] = row.correction.get_str();
                rj["pg"] = row.pg.get_str();
                rj["margin"] = row.margin.get_str();
                rj["holds"] = row.holds;
                rows.push_back(rj);
            }
            j["rows"] = rows;
            os << j.dump();
        } else {
            os << (series.homogeneous ? "homogeneous diagram: expecting equality\n"
                                      : "non-homogeneous diagram\n");
            if (series.leading_margin)
                os << "leading margin = " << series.leading_margin->get_str() << "\n";
            for (const auto& row : series.rows)
                os << "k=" << row.k << "  mu=" << row.mu.get_str() << "  mu(PT)="
                   << row.mu_pt.get_str() << (row.pt_included ? "" : " (omitted)")
                   << "  corr=" << row.correction.get_str() << "  pg=" << row.pg.get_str()
                   << "  margin=" << row.margin.get_str()
                   << (row.holds ? "  holds" : "  FAILS") << "\n";
            if (series.k0)
                os << "inequality holds from k0 = " << *series.k0 << "\n";
            else
                os << "inequality not reached within the scanned range\n";
            os << "convention: " << series.tangent_cone_convention << "\n";
        }
        emit(gopts, os.str());
        return 0;
    }
    if (cmd_cex->parsed()) {
        auto [lo, hi] = parse_range(m_range_text);
        CounterexampleReport rep = counterexample(lo, hi);
        std::ostringstream os;
        if (gopts.format == "csv") {
            os << "m,vol3,vol2,vol1,interior_body,interior_face,mu,pg,margin\n";
            for (const auto& row : rep.rows)
                os << row.m << "," << row.vol3.get_str() << "," << row.vol2.get_str()
                   << "," << row.vol1.get_str() << "," << row.interior_body.get_str()
                   << "," << row.interior_face.get_str() << "," << row.mu.get_str() << ","
                   << row.pg.get_str() << "," << row.margin.get_str() << "\n";
        } else if (gopts.format == "json") {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& row : rep.rows) {
                nlohmann::json rj;
                rj["m"] = row.m;
                rj["vol3"] = row.vol3.get_str();
                rj["vol2"] = row.vol2.get_str();
                rj["vol1"] = row.vol1.get_str();
                rj["interior_body"] = row.interior_body.get_str();
                rj["interior_face"] = row.interior_face.get_str();
                rj["mu"] = row.mu.get_str();
                rj["pg"] = row.pg.get_str();
                rj["margin"] = row.margin.get_str();
                rows.push_back(rj);
            }
            os << rows.dump();
        } else {
            for (const auto& row : rep.rows)
                os << "m=" << row.m << "  mu=" << row.mu.get_str() << "  pg="
                   << row.pg.get_str() << "  mu-6pg=" << row.margin.get_str() << "\n";
            os << "all closed forms verified; the bound mu >= 6 pg fails for every m\n";
        }
        emit(gopts, os.str());
        return 0;
    }
    if (cmd_lemma->parsed()) {
        LemmaSuiteReport rep = lemma_suite(n_max, r_max, corpus, gopts.seed);
        std::ostringstream os;
        if (gopts.format == "json") {
            nlohmann::json j;
            j["cnr_monotonicity"] = rep.cnr.monotonicity_ok;
            j["cnr_lower_bound"] = rep.cnr.lower_bound_ok;
            j["cnr_identity"] = rep.cnr.identity_ok;
            j["stirling_convolution"] = rep.cnr.stirling_recurrence_ok;
            j["stirling_ratio"] = rep.stirling_ratio_ok;
            j["boundary_case"] = rep.boundary_case_ok;
            j["stirling_monotone"] = rep.stirling_monotone_ok;
            j["volume_claim"] = rep.volume_claim_ok;
            j["volume_claim_checked"] = rep.volume_claim_checked;
            j["all_ok"] = rep.all_ok();
            if (!rep.first_failure.empty()) j["first_failure"] = rep.first_failure;
            os << j.dump();
        } else {
            auto line = [&](const char* name, bool ok) {
                os << (ok ? "[pass] " : "[FAIL] ") << name << "\n";
            };
            line("C_{n,r} monotone in r (strict for n >= 2)", rep.cnr.monotonicity_ok);
            line("C_{n,r} >= 2^n (strict for n >= 2)", rep.cnr.lower_bound_ok);
            line("property-4 identity", rep.cnr.identity_ok);
            line("Stirling convolution identity", rep.cnr.stirling_recurrence_ok);
            line("S(n+r-1,r)/S(n+r,r) > 2n/(n+r-1)^2", rep.stirling_ratio_ok);
            line("boundary case 7/15 > 3/8 at (r,n)=(2,3)", rep.boundary_case_ok);
            line("S(n+r,r) >= S(n+r-1,r-1), equality only at n=0", rep.stirling_monotone_ok);
            os << (rep.volume_claim_ok ? "[pass] " : "[FAIL] ")
               << "Vol_{N-1}(Gamma) <= Vol_{N-1}(Gamma^-)/N on " << rep.volume_claim_checked
               << " random diagrams\n";
            if (!rep.first_failure.empty()) os << "first failure: " << rep.first_failure << "\n";
        }
        emit(gopts, os.str());
        return rep.all_ok() ? 0 : 1;
    }
    if (cmd_covol->parsed()) {
        DiagramTuple t = tuple_from_json_text(read_file(input_path));
        MixedCovolumeTable table = mixed_covolumes(t.diagrams);
        if (gopts.format == "text") {
            std::ostringstream os;
            for (const auto& [k, co] : table.entries) {
                os << "coVol(";
                for (size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
                os << ") = " << co.get_str() << "\n";
            }
            if (table.grid_seed != 0)
                os << "interpolation grid: randomized, seed " << table.grid_seed << "\n";
            emit(gopts, os.str());
        } else {
            emit(gopts, table_to_json_text(table));
        }
        return 0;
    }
    if (cmd_ehrhart->parsed()) {
        NewtonDiagram g = diagram_from_json_text(read_file(input_path));
        if (!g.convenient()) throw PreconditionError("ehrhart: diagram is not convenient");
        std::vector<VecQ> pts = g.vertices();
        pts.push_back(VecQ(g.ambient_dim(), Rat(0)));
        Polytope hull = Polytope::convex_hull(pts);
        EhrhartPolynomial e = ehrhart_polynomial(hull, Int(gopts.budget));
        auto [lead, second] = pg_leading_terms(g);
        std::ostringstream os;
        if (gopts.format == "json") {
            nlohmann::json j;
            nlohmann::json coeffs = nlohmann::json::array();
            for (const auto& c : e.coeffs) coeffs.push_back(c.get_str());
            j["ehrhart_coefficients"] = coeffs;
            j["pg_leading"] = lead.get_str();
            j["pg_second"] = second.get_str();
            os << j.dump();
        } else {
            os << "Ehrhart polynomial of Conv(Gamma^-): L(k) = ";
            for (int i = static_cast<int>(e.coeffs.size()) - 1; i >= 0; --i) {
                if (e.coeffs[i] == 0) continue;
                os << e.coeffs[i].get_str() << "*k^" << i;
                if (i > 0) os << " + ";
            }
            os << "\npg(k Gamma) leading terms: " << lead.get_str() << " k^"
               << g.ambient_dim() << " + (" << second.get_str() << ") k^"
               << g.ambient_dim() - 1 << " + lower order\n";
            emit(gopts, os.str());
            return 0;
        }
        emit(gopts, os.str());
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
