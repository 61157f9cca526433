// stacky: sector calculus, Batyrev-Manin/Malle invariants and point counts
// for classifying stacks, roots-of-unity stacks and weighted projective
// stacks over Q.

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stacky/counting.hpp"
#include "stacky/error.hpp"
#include "stacky/fit.hpp"
#include "stacky/invariants.hpp"
#include "stacky/stackspec.hpp"
#include "stacky/thin.hpp"

using json = nlohmann::ordered_json;
using namespace stacky;

namespace {

struct GlobalOptions {
    bool no_meta = false;
    int threads = 1;
    Bounds bounds;
    long long budget = 10'000'000;
};

void apply_config(GlobalOptions& g, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read config file '" + path + "'");
    json cfg = json::parse(in);
    if (cfg.contains("closure_bound")) g.bounds.closure_bound = cfg["closure_bound"];
    if (cfg.contains("subgroup_order_bound"))
        g.bounds.subgroup_order_bound = cfg["subgroup_order_bound"];
    if (cfg.contains("enumeration_budget")) g.budget = cfg["enumeration_budget"];
    if (cfg.contains("threads")) g.threads = cfg["threads"];
}

void attach_meta(json& out, const GlobalOptions& g) {
    if (g.no_meta) return;
    auto now = std::chrono::system_clock::now();
    out["meta"] = {{"generated_at",
                    std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch())
                        .count()}};
}

void emit(const json& out, const std::string& path) {
    if (path.empty()) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::ofstream f(path);
        if (!f) throw Error("cannot write '" + path + "'");
        f << out.dump(2) << "\n";
    }
}

RaisingFileLoader json_file_loader() {
    return [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw Error("cannot read raising file '" + path + "'");
        json doc = json::parse(in);
        if (!doc.is_object()) throw Error("raising file must be a JSON object");
        std::map<std::string, Rat> table;
        for (const auto& [key, value] : doc.items())
            table[key] = Rat::parse(value.get<std::string>());
        return table;
    };
}

json verdict_json(const ThinVerdict& v) {
    return json{{"source", v.source},
                {"a", v.a_sub.str()},
                {"b", v.b_sub},
                {"verdict", verdict_name(v.verdict)}};
}

int run_sectors(const GlobalOptions& g, const std::string& stack_spec,
                const std::string& raising_spec, bool csv, const std::string& output) {
    StackDescriptor x = parse_stack_spec(stack_spec, g.bounds);
    std::optional<RaisingFunction> c;
    if (!raising_spec.empty()) c = parse_raising_spec(x, raising_spec, json_file_loader());

    if (csv) {
        std::ostringstream os;
        os << (c ? "label,age,c,age_c,twisted\n" : "label,age,twisted\n");
        for (const Sector& s : sectors(x)) {
            os << s.label.str() << "," << s.age.str();
            if (c) {
                const Rat& v = c->at(s.label);
                os << "," << v.str() << "," << (s.age + v).str();
            }
            os << "," << (s.is_twisted ? 1 : 0) << "\n";
        }
        if (output.empty()) std::cout << os.str();
        else std::ofstream(output) << os.str();
        return 0;
    }
    json rows = json::array();
    for (const Sector& s : sectors(x)) {
        json row{{"label", s.label.str()}, {"age", s.age.str()}, {"twisted", s.is_twisted}};
        if (c) {
            const Rat& v = c->at(s.label);
            row["c"] = v.str();
            row["age_c"] = (s.age + v).str();
        }
        rows.push_back(std::move(row));
    }
    json out{{"stack", x.spec_string()}, {"sectors", rows}};
    if (c) out["raising"] = raising_spec;
    attach_meta(out, g);
    emit(out, output);
    return 0;
}

int run_invariants(const GlobalOptions& g, const std::string& stack_spec,
                   const std::string& raising_spec, const std::string& output) {
    StackDescriptor x = parse_stack_spec(stack_spec, g.bounds);
    RaisingFunction c = parse_raising_spec(x, raising_spec, json_file_loader());
    InvariantReport rep = x.dim() == 0 ? ab_report(x, c) : fano_prediction(x, c);
    json out{{"stack", x.spec_string()}, {"a", rep.a.str()},        {"b", rep.b},
             {"rho", rep.rho},           {"j_c", rep.j_c},          {"adequate", rep.adequate},
             {"prediction", rep.prediction_string()}};
    attach_meta(out, g);
    emit(out, output);
    return 0;
}

int run_thin_scan(const GlobalOptions& g, const std::string& stack_spec,
                  const std::string& raising_spec, const std::string& output) {
    StackDescriptor x = parse_stack_spec(stack_spec, g.bounds);
    RaisingFunction c = parse_raising_spec(x, raising_spec, json_file_loader());
    auto ambient = ab_invariants(x, c);
    json verdicts = json::array();
    for (const ThinVerdict& v : subgroup_scan(x, c)) verdicts.push_back(verdict_json(v));
    json out{{"stack", x.spec_string()},
             {"a", ambient.first.str()},
             {"b", ambient.second},
             {"verdicts", verdicts}};
    attach_meta(out, g);
    emit(out, output);
    return 0;
}

int run_kluners(const GlobalOptions& g, const std::string& output) {
    KlunersReport rep = kluners_report();
    json subgroups = json::array();
    for (const ThinVerdict& v : rep.subgroup_verdicts) subgroups.push_back(verdict_json(v));
    json twists = json::array();
    for (const ThinVerdict& v : rep.twist_verdicts) twists.push_back(verdict_json(v));
    json out{{"group", "degree=6; gens=" + rep.group.generators_string()},
             {"order", rep.group.order()},
             {"a", rep.a.str()},
             {"b", rep.b},
             {"subgroup_verdicts", subgroups},
             {"twist_verdicts", twists},
             {"ind_comprehensive", rep.comprehensiveness.comprehensive},
             {"witness", rep.comprehensiveness.comprehensive
                             ? json(nullptr)
                             : json(rep.comprehensiveness.witness_label)}};
    attach_meta(out, g);
    emit(out, output);
    return 0;
}

int run_comprehensive(const GlobalOptions& g, const std::string& group_text,
                      const std::string& raising_spec, const std::string& output) {
    PermGroup grp = PermGroup::parse(group_text, g.bounds);
    std::map<std::string, Rat> c;
    if (raising_spec == "builtin:index") {
        for (const auto& cls : grp.conjugacy_classes())
            c[cls.representative.cycle_string()] = Rat(cls.representative.index());
    } else if (raising_spec.rfind("table:{", 0) == 0 && raising_spec.back() == '}') {
        // reuse the table syntax keyed by conjugacy-class representatives
        StackDescriptor x = StackDescriptor::bg(grp, FieldDescriptor::split());
        RaisingFunction cf = parse_raising_spec(x, raising_spec);
        for (const Sector& s : sectors(x)) c[s.label.str()] = cf.at(s.label);
    } else {
        throw Error("comprehensive needs builtin:index or a table raising");
    }
    ComprehensiveResult res = is_comprehensive(grp, c);
    json out{{"group", group_text},
             {"comprehensive", res.comprehensive},
             {"witness", res.comprehensive ? json(nullptr) : json(res.witness_label)}};
    attach_meta(out, g);
    emit(out, output);
    return 0;
}

std::vector<double> parse_samples(const std::string& text) {
    std::vector<double> out;
    size_t p = 0;
    while (p < text.size()) {
        size_t comma = text.find(',', p);
        size_t end = comma == std::string::npos ? text.size() : comma;
        std::string tok = text.substr(p, end - p);
        if (!tok.empty()) out.push_back(std::stod(tok));
        p = end + 1;
    }
    if (out.empty()) throw Error("empty B-sample list");
    return out;
}

int run_count(const GlobalOptions& g, const std::string& stack_spec,
              const std::string& raising_spec, const std::string& variant_name,
              const std::string& samples_text, double bmax, int points, double ratio,
              bool check_oracle, const std::string& output, const std::string& sidecar) {
    StackDescriptor x = parse_stack_spec(stack_spec, g.bounds);
    std::vector<double> samples;
    if (!samples_text.empty()) {
        samples = parse_samples(samples_text);
    } else if (bmax > 0) {
        double b = bmax;
        for (int i = 0; i < points; ++i) {
            samples.push_back(b);
            b /= ratio;
        }
        std::sort(samples.begin(), samples.end());
    } else {
        throw Error("count needs --b-samples or --bmax");
    }

    CountOptions opts;
    opts.workers = g.threads;
    opts.budget = g.budget;

    CountSeries series;
    bool oracle_checked = false;
    if (x.kind() == StackDescriptor::Kind::Mu) {
        if (raising_spec.empty()) throw Error("mu counting needs --raising");
        RaisingFunction c = parse_raising_spec(x, raising_spec, json_file_loader());
        series = mu_count(x.mu_order(), c, samples, opts);
        if (check_oracle) {
            for (const auto& [b, n] : series.samples) {
                long long expect = mu_sieve_oracle(x.mu_order(), c, (long long)b);
                if (expect != n)
                    throw Error("oracle mismatch at B = " + std::to_string(b) + ": enumerated " +
                                std::to_string(n) + ", sieve " + std::to_string(expect));
            }
            oracle_checked = true;
        }
    } else if (x.kind() == StackDescriptor::Kind::Wps) {
        WpsHeightVariant variant;
        if (variant_name == "quasitoric" || variant_name.empty())
            variant = WpsHeightVariant::QuasiToric;
        else if (variant_name == "stable")
            variant = WpsHeightVariant::Stable;
        else
            throw Error("unknown height variant '" + variant_name + "'");
        std::vector<long long> thresholds;
        for (double b : samples) {
            if (b < 1 || b != std::floor(b))
                throw Error("wps counting needs integer B samples >= 1");
            thresholds.push_back((long long)b);
        }
        series = wps_count(x.weights(), variant, thresholds, opts);
        if (check_oracle) {
            std::vector<long long> small;
            for (long long t : thresholds)
                if (t <= 1000) small.push_back(t);
            if (!small.empty()) {
                auto oracle = wps_oracle_counts(x.weights(), variant, small);
                for (size_t i = 0; i < small.size(); ++i) {
                    long long got = 0;
                    for (const auto& [b, n] : series.samples)
                        if ((long long)b == small[i]) got = n;
                    if (oracle[i] != got)
                        throw Error("oracle mismatch at B = " + std::to_string(small[i]));
                }
                oracle_checked = true;
            }
        }
    } else {
        throw Error("counting is implemented for mu(l) and wps(...) stacks");
    }

    std::ostringstream csv;
    csv << "B,N\n";
    for (const auto& [b, n] : series.samples) {
        csv.precision(15);
        csv << b << "," << n << "\n";
    }
    if (output.empty()) std::cout << csv.str();
    else std::ofstream(output) << csv.str();

    std::string sidecar_path = sidecar;
    if (sidecar_path.empty() && !output.empty()) {
        sidecar_path = output;
        size_t dot = sidecar_path.rfind('.');
        if (dot != std::string::npos) sidecar_path = sidecar_path.substr(0, dot);
        sidecar_path += ".json";
    }
    if (!sidecar_path.empty()) {
        json side{{"family", series.family},
                  {"raising", series.raising},
                  {"samples", series.samples.size()},
                  {"oracle_checked", oracle_checked}};
        attach_meta(side, g);
        emit(side, sidecar_path);
    }
    return 0;
}

int run_fit(const GlobalOptions& g, const std::string& input, const std::string& fix_alpha,
            const std::string& output) {
    std::ifstream in(input);
    if (!in) throw Error("cannot read '" + input + "'");
    CountSeries series;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        size_t comma = line.find(',');
        if (comma == std::string::npos) continue;
        try {
            double b = std::stod(line.substr(0, comma));
            long long n = std::stoll(line.substr(comma + 1));
            series.samples.push_back({b, n});
        } catch (const std::exception&) {
            continue;  // header or stray line
        }
    }
    std::optional<double> alpha;
    if (!fix_alpha.empty()) alpha = Rat::parse(fix_alpha).to_double();
    FitResult res = fit_exponents(series, alpha);
    json out{{"alpha", res.alpha},
             {"log_exponent", res.log_exponent},
             {"constant", res.constant},
             {"residual", res.residual},
             {"mode", res.fixed_alpha ? "fixed_alpha" : "free"}};
    attach_meta(out, g);
    emit(out, output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sector calculus and point counting for stacky Batyrev-Manin/Malle families"};
    app.require_subcommand(1);

    GlobalOptions g;
    std::string config_path;
    app.add_flag("--no-meta", g.no_meta, "suppress the timestamp metadata field");
    app.add_option("--threads", g.threads, "worker threads for enumerations");
    app.add_option("--config", config_path, "JSON config with bounds and budgets");

    std::string stack_spec, raising_spec, output, group_text;
    bool csv = false;

    auto* cmd_sectors = app.add_subcommand("sectors", "list sectors, ages and raising values");
    cmd_sectors->add_option("--stack", stack_spec, "stack spec")->required();
    cmd_sectors->add_option("--raising", raising_spec, "raising spec");
    bool as_json = false;
    cmd_sectors->add_flag("--json", as_json, "JSON output (the default)");
    cmd_sectors->add_flag("--csv", csv, "CSV output instead of JSON");
    cmd_sectors->add_option("--output,-o", output, "output file (default stdout)");

    auto* cmd_inv = app.add_subcommand("invariants", "a, b, rho, j_c and the predicted asymptotic");
    cmd_inv->add_option("--stack", stack_spec, "stack spec")->required();
    cmd_inv->add_option("--raising", raising_spec, "raising spec")->required();
    cmd_inv->add_option("--output,-o", output, "output file");

    auto* cmd_thin = app.add_subcommand("thin-scan", "breaking / weakly-breaking subgroup scan");
    cmd_thin->add_option("--stack", stack_spec, "stack spec")->required();
    cmd_thin->add_option("--raising", raising_spec, "raising spec")->required();
    cmd_thin->add_option("--output,-o", output, "output file");

    auto* cmd_kluners = app.add_subcommand("kluners", "the C3 wr C2 counterexample analysis");
    cmd_kluners->add_option("--output,-o", output, "output file");

    auto* cmd_comp = app.add_subcommand("comprehensive", "c-comprehensiveness of a finite group");
    cmd_comp->add_option("--group", group_text, "degree=n; gens=... group text")->required();
    std::string comp_raising = "builtin:index";
    cmd_comp->add_option("--raising", comp_raising, "builtin:index or table:{...}");
    cmd_comp->add_option("--output,-o", output, "output file");

    auto* cmd_count = app.add_subcommand("count", "exact height counting, CSV output");
    std::string samples_text, variant_name, sidecar;
    double bmax = 0;
    int points = 16;
    double ratio = 2.0;
    bool check_oracle = false;
    cmd_count->add_option("--stack", stack_spec, "mu(l) or wps(...) spec")->required();
    cmd_count->add_option("--raising", raising_spec, "raising spec (mu only)");
    cmd_count->add_option("--variant", variant_name, "wps height: quasitoric|stable");
    cmd_count->add_option("--b-samples", samples_text, "comma-separated B values");
    cmd_count->add_option("--bmax", bmax, "largest B for geometric samples");
    cmd_count->add_option("--points", points, "number of geometric samples");
    cmd_count->add_option("--ratio", ratio, "geometric sample ratio");
    cmd_count->add_flag("--oracle", check_oracle, "cross-check against the sieve/slack-box oracle");
    cmd_count->add_option("--output,-o", output, "CSV output file");
    cmd_count->add_option("--sidecar", sidecar, "JSON sidecar file");

    auto* cmd_fit = app.add_subcommand("fit", "fit C*B^alpha*(log B)^beta to a CSV series");
    std::string fit_input, fix_alpha;
    cmd_fit->add_option("--input", fit_input, "CSV file with B,N rows")->required();
    cmd_fit->add_option("--fix-alpha", fix_alpha, "fix the B-exponent (rational)");
    cmd_fit->add_option("--output,-o", output, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (!config_path.empty()) apply_config(g, config_path);
        if (cmd_sectors->parsed()) return run_sectors(g, stack_spec, raising_spec, csv, output);
        if (cmd_inv->parsed()) return run_invariants(g, stack_spec, raising_spec, output);
        if (cmd_thin->parsed()) return run_thin_scan(g, stack_spec, raising_spec, output);
        if (cmd_kluners->parsed()) return run_kluners(g, output);
        if (cmd_comp->parsed()) return run_comprehensive(g, group_text, comp_raising, output);
        if (cmd_count->parsed())
            return run_count(g, stack_spec, raising_spec, variant_name, samples_text, bmax,
                             points, ratio, check_oracle, output, sidecar);
        if (cmd_fit->parsed()) return run_fit(g, fit_input, fix_alpha, output);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
