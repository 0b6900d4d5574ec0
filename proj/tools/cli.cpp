#include "cli.hpp"

#include <cstdio>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gstower/field.hpp"
#include "gstower/identities.hpp"
#include "gstower/points.hpp"
#include "gstower/ramification.hpp"
#include "gstower/tower.hpp"

namespace gstower::cli {

using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "1.0.0";
constexpr int kFormatVersion = 1;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

json manifest(const std::string& command, std::int64_t p, const json& flags) {
    json m;
    m["tool"] = "gstower";
    m["version"] = kToolVersion;
    m["format_version"] = kFormatVersion;
    m["command"] = command;
    m["p"] = p;
    m["modulus"] = gf::make_field(p, 2)->modulus_str();
    m["flags"] = flags;
    m["formulas"] = {
        {"deg_D", "2*(1-p^(3-n))*deg"},
        {"deg_L", "2*(p-p^(2-n))*deg"},
        {"genus", "(p-p^(3-n)-p^(2-n))*deg+1"},
        {"path_different_zero", "2*(p^(n-3)-1)"},
        {"path_different_other", "2*(p^(n-1)-1)"},
        {"ratio", "(p^2-p)*deg/((p-p^(3-n)-p^(2-n))*deg+1)"},
    };
    return m;
}

gf::FieldElement default_beta(const gf::FieldCtxPtr& ctx) {
    for (const auto& a : gf::trace_zero_set(ctx).elements)
        if (!a.is_zero()) return a;
    throw Error("no usable beta");
}

struct TowerArgs {
    std::int64_t p = 3;
    int n = 3;
    std::string tower = "gs";
    std::string model = "full";
    std::string beta_str;

    tower::TowerSpec make() const {
        if (tower == "gs") return tower::gs_tower(p, n);
        auto ctx = gf::make_field(p, 2);
        gf::FieldElement beta =
            beta_str.empty() ? default_beta(ctx) : ctx->parse(beta_str);
        return tower::closure_tower(p, n, beta, model == "reduced");
    }
};

// ------------------------------------------------------------- field-info

int cmd_field_info(std::int64_t p, const std::string& format, std::ostream& out) {
    auto ctx = gf::make_field(p, 2);
    auto km = gf::trace_zero_set(ctx);
    auto census = gf::check_norm_trace_identity(ctx);

    if (format == "json") {
        json j;
        j["manifest"] = manifest("field-info", p, {{"p", p}, {"format", format}});
        j["q"] = ctx->q();
        j["modulus"] = ctx->modulus_str();
        json kml = json::array();
        for (const auto& e : km.elements) kml.push_back(e.str());
        j["k_minus"] = kml;
        j["norm_trace_census"] = {{"checked", census.checked}, {"passed", census.passed}};
        json elems = json::array();
        for (std::int64_t i = 0; i < ctx->q(); ++i) {
            auto x = ctx->from_index(i);
            json e;
            e["element"] = x.str();
            e["coeffs"] = x.coeffs();
            e["in_k_minus"] = km.contains(x);
            if (!km.contains(x)) {
                auto [tr, nm] = gf::trace_norm(x);
                e["trace"] = tr.str();
                e["norm"] = nm.str();
                e["g"] = gf::eval_g(x).str();
            }
            elems.push_back(e);
        }
        j["elements"] = elems;
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        out << "element,in_k_minus,trace,norm,g\n";
        for (std::int64_t i = 0; i < ctx->q(); ++i) {
            auto x = ctx->from_index(i);
            bool in_km = km.contains(x);
            out << x.str() << "," << (in_km ? 1 : 0) << ",";
            if (in_km) {
                out << ",,\n";
            } else {
                auto [tr, nm] = gf::trace_norm(x);
                out << tr.str() << "," << nm.str() << "," << gf::eval_g(x).str() << "\n";
            }
        }
        out << "# norm_trace_census checked=" << census.checked
            << " passed=" << (census.passed ? 1 : 0) << "\n";
    } else {
        out << "GF(" << ctx->q() << ") = GF(" << p << ")[t]/(" << ctx->modulus_str() << ")\n";
        out << "K_- = {";
        for (size_t i = 0; i < km.elements.size(); ++i)
            out << (i ? ", " : "") << km.elements[i].str();
        out << "}\n";
        out << "norm/trace identity: " << (census.passed ? "pass" : "FAIL") << " ("
            << census.checked << " values)\n";
    }
    return census.passed ? 0 : 1;
}

// ------------------------------------------------------------------ count

int cmd_count(const TowerArgs& targs, bool parallel, const std::string& format,
              std::ostream& out) {
    auto spec = targs.make();
    auto census = points::count_split_points(spec, parallel);
    auto degree = points::degree_via_fiber(spec);

    mpz_class bound = mpz_class(static_cast<long>(targs.p)) * (targs.p - 1) *
                      mpz_class(static_cast<unsigned long>(degree.value));
    bool bound_met = mpz_class(static_cast<unsigned long>(census.total)) >= bound;

    json summary;
    summary["total"] = census.total;
    summary["degree"] = {{degree.exact ? "exact" : "upper_bound", degree.value}};
    summary["bound"] = bound.get_str();
    summary["bound_met"] = bound_met;
    summary["all_split"] = census.all_split;

    if (format == "json") {
        json j;
        json flags = {{"p", targs.p},       {"n", targs.n},   {"tower", targs.tower},
                      {"model", targs.model}, {"beta", targs.beta_str}, {"parallel", parallel}};
        j["manifest"] = manifest("count", targs.p, flags);
        json rows = json::array();
        for (const auto& r : census.rows) {
            rows.push_back({{"base", r.base.str()},
                            {"fiber_size", r.fiber_size},
                            {"split", r.split},
                            {"values_outside_Kminus", r.values_outside_kminus}});
        }
        j["rows"] = rows;
        j["summary"] = summary;
        out << j.dump(2) << "\n";
    } else {
        out << "base,fiber_size,split,values_outside_Kminus\n";
        for (const auto& r : census.rows)
            out << r.base.str() << "," << r.fiber_size << "," << (r.split ? 1 : 0) << ","
                << (r.values_outside_kminus ? 1 : 0) << "\n";
        out << "# summary: " << summary.dump() << "\n";
    }
    return 0;
}

// ----------------------------------------------------------------- degree

int cmd_degree(const TowerArgs& targs, const std::string& format, std::ostream& out) {
    auto spec = targs.make();
    auto degree = points::degree_via_fiber(spec);
    if (format == "json") {
        json j;
        json flags = {{"p", targs.p}, {"n", targs.n}, {"tower", targs.tower}, {"model", targs.model}};
        j["manifest"] = manifest("degree", targs.p, flags);
        j["degree"] = {{degree.exact ? "exact" : "upper_bound", degree.value}};
        out << j.dump(2) << "\n";
    } else {
        out << (degree.exact ? "exact" : "upper_bound") << " " << degree.value << "\n";
    }
    return 0;
}

// ----------------------------------------------------------------- verify

int cmd_verify(std::int64_t p, int kmax, const std::string& suite, std::ostream& out) {
    std::set<std::string> suites;
    if (!suite.empty()) suites.insert(suite);
    auto reports = checks::run_suites(p, kmax, suites);
    bool ok = checks::all_passed(reports);

    json j;
    j["manifest"] = manifest("verify", p, {{"p", p}, {"kmax", kmax}, {"suite", suite.empty() ? "all" : suite}});
    json list = json::array();
    for (const auto& r : reports) {
        json e;
        e["statement_id"] = r.statement_id;
        e["identity"] = r.identity;
        e["instances"] = r.instances;
        e["numeric_points"] = r.numeric_points;
        e["passed"] = r.passed;
        e["negative_control_ok"] = r.negative_control_ok;
        if (!r.counterexample.empty()) e["counterexample"] = r.counterexample;
        list.push_back(e);
    }
    j["checks"] = list;
    j["passed"] = ok;
    out << j.dump(2) << "\n";
    return ok ? 0 : 1;
}

// ------------------------------------------------- genus, different, ratio

int cmd_genus(std::int64_t p, int n, const std::string& deg_str, const std::string& format,
              std::ostream& out) {
    auto expr = ram::genus_closure(p, n); // LevelTooSmall for n <= 4
    json row;
    row["n"] = n;
    row["genus_coeff"] = ram::q_str(expr.a);
    row["genus_const"] = ram::q_str(expr.b);
    row["genus"] = expr.str();
    std::string at_deg;
    if (!deg_str.empty()) {
        mpz_class deg(deg_str);
        if (deg < ram::degree_floor(p, n))
            throw DegreeTooSmall("cover degree must be at least p^(n-1) = " +
                                 ram::degree_floor(p, n).get_str());
        at_deg = ram::q_str(expr.at(deg));
        row["deg"] = deg.get_str();
        row["genus_at_deg"] = at_deg;
    }
    if (format == "json") {
        json j;
        j["manifest"] = manifest("genus", p, {{"p", p}, {"n", n}, {"deg", deg_str}});
        j["result"] = row;
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        out << "n,genus_coeff,genus_const,genus_at_deg\n";
        out << n << "," << ram::q_str(expr.a) << "," << ram::q_str(expr.b) << "," << at_deg << "\n";
    } else {
        out << "genus(n=" << n << ") = " << expr.str() << "\n";
        if (!at_deg.empty()) out << "at deg=" << deg_str << ": " << at_deg << "\n";
    }
    return 0;
}

int cmd_different(std::int64_t p, int n, const std::string& format, std::ostream& out) {
    struct Row {
        std::string locus;
        mpz_class value;
        mpz_class closed;
    };
    std::vector<Row> rows;
    if (n >= 4)
        rows.push_back({"zero", ram::path_different(p, n, ram::Locus::Zero),
                        ram::path_different_closed_form(p, n, ram::Locus::Zero)});
    rows.push_back({"kminus_star_or_infty",
                    ram::path_different(p, n, ram::Locus::KminusStarOrInfty),
                    ram::path_different_closed_form(p, n, ram::Locus::KminusStarOrInfty)});

    json degs;
    if (n >= 4) {
        degs["deg_D"] = ram::deg_D(p, n).str();
        if (n >= 5) degs["deg_L"] = ram::deg_L(p, n).str();
    }

    if (format == "json") {
        json j;
        j["manifest"] = manifest("different", p, {{"p", p}, {"n", n}});
        json list = json::array();
        for (const auto& r : rows)
            list.push_back({{"locus", r.locus},
                            {"path_different", r.value.get_str()},
                            {"closed_form", r.closed.get_str()}});
        j["paths"] = list;
        j["divisor_degrees"] = degs;
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        out << "locus,path_different,closed_form\n";
        for (const auto& r : rows)
            out << r.locus << "," << r.value.get_str() << "," << r.closed.get_str() << "\n";
    } else {
        for (const auto& r : rows)
            out << r.locus << ": path different = " << r.value.get_str()
                << " (closed form " << r.closed.get_str() << ")\n";
        for (auto it = degs.begin(); it != degs.end(); ++it)
            out << it.key() << " = " << it.value().get<std::string>() << "\n";
    }
    return 0;
}

int cmd_ratio(std::int64_t p, int nmax, bool deg_floor, const std::string& format,
              std::ostream& out) {
    if (nmax < 5) throw LevelTooSmall("the ratio table starts at n = 5");
    struct Row {
        int n;
        std::string coeff_D, coeff_L, genus_coeff;
        mpq_class limit;
        std::string deg;
        mpq_class at_deg;
        bool has_at = false;
    };
    std::vector<Row> rows;
    for (int n = 5; n <= nmax; ++n) {
        Row r;
        r.n = n;
        r.coeff_D = ram::q_str(ram::deg_D(p, n).a);
        r.coeff_L = ram::q_str(ram::deg_L(p, n).a);
        r.genus_coeff = ram::q_str(ram::genus_closure(p, n).a);
        r.limit = ram::ratio_limit(p, n);
        if (deg_floor) {
            mpz_class deg = ram::degree_floor(p, n);
            r.deg = deg.get_str();
            r.at_deg = ram::ratio_at(p, n, deg);
            r.has_at = true;
        }
        rows.push_back(std::move(r));
    }
    mpq_class dv_limit(static_cast<long>(p - 1));

    if (format == "json") {
        json j;
        j["manifest"] =
            manifest("ratio", p, {{"p", p}, {"nmax", nmax}, {"deg_floor", deg_floor}});
        json list = json::array();
        for (const auto& r : rows) {
            json e;
            e["n"] = r.n;
            e["deg_D_over_deg"] = r.coeff_D;
            e["deg_L_over_deg"] = r.coeff_L;
            e["genus_coeff"] = r.genus_coeff;
            e["ratio_limit"] = ram::q_str(r.limit);
            e["ratio_limit_float"] = fmt_double(r.limit.get_d());
            if (r.has_at) {
                e["deg"] = r.deg;
                e["ratio_at_deg"] = ram::q_str(r.at_deg);
                e["ratio_at_deg_float"] = fmt_double(r.at_deg.get_d());
            }
            list.push_back(e);
        }
        j["rows"] = list;
        j["limit_n_to_infinity"] = ram::q_str(dv_limit);
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        out << "n,deg_D_over_deg,deg_L_over_deg,genus_coeff,ratio_limit,ratio_limit_float";
        if (deg_floor) out << ",deg,ratio_at_deg,ratio_at_deg_float";
        out << "\n";
        for (const auto& r : rows) {
            out << r.n << "," << r.coeff_D << "," << r.coeff_L << "," << r.genus_coeff << ","
                << ram::q_str(r.limit) << "," << fmt_double(r.limit.get_d());
            if (r.has_at)
                out << "," << r.deg << "," << ram::q_str(r.at_deg) << ","
                    << fmt_double(r.at_deg.get_d());
            out << "\n";
        }
        out << "# limit as n->infinity: " << ram::q_str(dv_limit) << "\n";
    } else {
        out << "n | deg_D/deg | deg_L/deg | genus coeff | ratio limit (~float)";
        if (deg_floor) out << " | ratio at deg=p^(n-1) (~float)";
        out << "\n";
        for (const auto& r : rows) {
            out << r.n << " | " << r.coeff_D << " | " << r.coeff_L << " | " << r.genus_coeff
                << " | " << ram::q_str(r.limit) << " (~" << fmt_double(r.limit.get_d()) << ")";
            if (r.has_at)
                out << " | " << ram::q_str(r.at_deg) << " (~" << fmt_double(r.at_deg.get_d())
                    << ")";
            out << "\n";
        }
        out << "limit as n->infinity: " << ram::q_str(dv_limit) << "\n";
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"explicit models, point counts and genus formulas for the Galois "
                 "closure of the Garcia-Stichtenoth tower over GF(p^2)"};
    app.require_subcommand(1);

    // field-info
    auto* fi = app.add_subcommand("field-info", "field tables, K_- and the norm/trace census");
    std::int64_t fi_p = 3;
    std::string fi_format = "table";
    fi->add_option("--p", fi_p, "odd prime")->required();
    fi->add_option("--format", fi_format, "table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}));

    // count
    auto* ct = app.add_subcommand("count", "fiber census over the base line");
    TowerArgs ct_args;
    bool ct_parallel = false;
    std::string ct_format = "csv";
    ct->add_option("--p", ct_args.p, "odd prime")->required();
    ct->add_option("--n", ct_args.n, "tower level")->required();
    ct->add_option("--tower", ct_args.tower, "gs|closure")
        ->check(CLI::IsMember({"gs", "closure"}));
    ct->add_option("--model", ct_args.model, "full|reduced")
        ->check(CLI::IsMember({"full", "reduced"}));
    ct->add_option("--beta", ct_args.beta_str, "nonzero trace-zero element, e.g. t or 2t");
    ct->add_flag("--parallel", ct_parallel, "enumerate fibers in parallel");
    ct->add_option("--format", ct_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    // degree
    auto* dg = app.add_subcommand("degree", "model degree from a split fiber");
    TowerArgs dg_args;
    std::string dg_format = "table";
    dg->add_option("--p", dg_args.p, "odd prime")->required();
    dg->add_option("--n", dg_args.n, "tower level")->required();
    dg->add_option("--tower", dg_args.tower, "gs|closure")
        ->check(CLI::IsMember({"gs", "closure"}));
    dg->add_option("--model", dg_args.model, "full|reduced")
        ->check(CLI::IsMember({"full", "reduced"}));
    dg->add_option("--beta", dg_args.beta_str, "nonzero trace-zero element");
    dg->add_option("--format", dg_format, "table|json")->check(CLI::IsMember({"table", "json"}));

    // verify
    auto* vf = app.add_subcommand("verify", "machine-check the closure identities");
    std::int64_t vf_p = 3;
    int vf_kmax = 3;
    std::string vf_suite;
    vf->add_option("--p", vf_p, "odd prime")->required();
    vf->add_option("--kmax", vf_kmax, "maximal index length for relation item 3");
    vf->add_option("--suite", vf_suite, "all|lemma|delta|eta|gshift|split")
        ->check(CLI::IsMember({"all", "lemma", "delta", "eta", "gshift", "split"}));

    // genus
    auto* gn = app.add_subcommand("genus", "genus formula of the closure curve");
    std::int64_t gn_p = 3;
    int gn_n = 5;
    std::string gn_deg, gn_format = "table";
    gn->add_option("--p", gn_p, "odd prime")->required();
    gn->add_option("--n", gn_n, "tower level (> 4)")->required();
    gn->add_option("--deg", gn_deg, "cover degree to substitute (>= p^(n-1))");
    gn->add_option("--format", gn_format, "table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}));

    // different
    auto* df = app.add_subcommand("different", "path different exponents per locus");
    std::int64_t df_p = 3;
    int df_n = 4;
    std::string df_format = "table";
    df->add_option("--p", df_p, "odd prime")->required();
    df->add_option("--n", df_n, "tower level")->required();
    df->add_option("--format", df_format, "table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}));

    // ratio
    auto* rt = app.add_subcommand("ratio", "point/genus ratio table");
    std::int64_t rt_p = 3;
    int rt_nmax = 8;
    bool rt_deg_floor = false;
    std::string rt_format = "table";
    rt->add_option("--p", rt_p, "odd prime")->required();
    rt->add_option("--nmax", rt_nmax, "largest level in the table")->required();
    rt->add_flag("--deg-floor", rt_deg_floor, "evaluate the ratio at deg = p^(n-1)");
    rt->add_option("--format", rt_format, "table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}));

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (fi->parsed()) return cmd_field_info(fi_p, fi_format, out);
        if (ct->parsed()) return cmd_count(ct_args, ct_parallel, ct_format, out);
        if (dg->parsed()) return cmd_degree(dg_args, dg_format, out);
        if (vf->parsed()) return cmd_verify(vf_p, vf_kmax, vf_suite, out);
        if (gn->parsed()) return cmd_genus(gn_p, gn_n, gn_deg, gn_format, out);
        if (df->parsed()) return cmd_different(df_p, df_n, df_format, out);
        if (rt->parsed()) return cmd_ratio(rt_p, rt_nmax, rt_deg_floor, rt_format, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

} // namespace gstower::cli
