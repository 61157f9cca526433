#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stacky/counting.hpp"
#include "stacky/error.hpp"
#include "stacky/fit.hpp"
#include "stacky/invariants.hpp"
#include "stacky/stackspec.hpp"
#include "stacky/thin.hpp"

namespace py = pybind11;
using namespace stacky;

namespace {

py::dict sector_dict(const Sector& s) {
    py::dict d;
    d["label"] = s.label.str();
    d["age"] = s.age.str();
    d["twisted"] = s.is_twisted;
    return d;
}

py::dict report_dict(const InvariantReport& rep) {
    py::dict d;
    d["a"] = rep.a.str();
    d["b"] = rep.b;
    d["rho"] = rep.rho;
    d["j_c"] = rep.j_c;
    d["adequate"] = rep.adequate;
    d["prediction"] = rep.prediction_string();
    return d;
}

py::dict verdict_dict(const ThinVerdict& v) {
    py::dict d;
    d["source"] = v.source;
    d["a"] = v.a_sub.str();
    d["b"] = v.b_sub;
    d["verdict"] = verdict_name(v.verdict);
    return d;
}

RaisingFunction resolve_raising(const StackDescriptor& x, const std::string& spec) {
    return parse_raising_spec(x, spec);
}

WpsHeightVariant variant_from(const std::string& name) {
    if (name == "quasitoric") return WpsHeightVariant::QuasiToric;
    if (name == "stable") return WpsHeightVariant::Stable;
    throw Error("unknown height variant '" + name + "' (quasitoric|stable)");
}

}  // namespace

PYBIND11_MODULE(_stacky, m) {
    m.doc() = "sector calculus and point counting for stacky Batyrev-Manin/Malle families";

    py::register_exception<Error>(m, "StackyError");

    py::class_<Perm>(m, "Perm")
        .def_static("parse", &Perm::parse, py::arg("cycles"), py::arg("degree"))
        .def("cycle_string", &Perm::cycle_string)
        .def("images", &Perm::images)
        .def("order", &Perm::order)
        .def("index", &Perm::index)
        .def("__mul__", &Perm::operator*)
        .def("inverse", &Perm::inverse)
        .def("__repr__", [](const Perm& p) { return "Perm(" + p.cycle_string() + ")"; });

    py::class_<PermGroup>(m, "PermGroup")
        .def_static("parse", [](const std::string& text) { return PermGroup::parse(text); })
        .def_static("generate",
                    [](const std::vector<Perm>& gens) { return PermGroup::generate(gens); })
        .def("order", &PermGroup::order)
        .def("degree", &PermGroup::degree)
        .def("exponent", &PermGroup::exponent)
        .def("elements", &PermGroup::elements)
        .def("conjugacy_classes",
             [](const PermGroup& g) {
                 py::list out;
                 for (const auto& cls : g.conjugacy_classes()) {
                     py::dict d;
                     d["representative"] = cls.representative.cycle_string();
                     py::list members;
                     for (int idx : cls.member_idx)
                         members.append(g.elements()[idx].cycle_string());
                     d["members"] = members;
                     out.append(d);
                 }
                 return out;
             })
        .def("subgroups", [](const PermGroup& g) { return g.subgroups(); })
        .def("normal_closure", &PermGroup::normal_closure)
        .def("generators_string", &PermGroup::generators_string)
        .def("__repr__", [](const PermGroup& g) {
            return "PermGroup(degree=" + std::to_string(g.degree()) +
                   ", order=" + std::to_string(g.order()) + ")";
        });

    py::class_<StackDescriptor>(m, "StackDescriptor")
        .def("dim", &StackDescriptor::dim)
        .def("rho", &StackDescriptor::rho)
        .def("spec_string", &StackDescriptor::spec_string)
        .def("__repr__",
             [](const StackDescriptor& x) { return "StackDescriptor(" + x.spec_string() + ")"; });

    m.def("parse_stack", [](const std::string& text) { return parse_stack_spec(text); },
          "parse the bg/mu/wps/prod mini-language");

    m.def("sectors", [](const StackDescriptor& x) {
        py::list out;
        for (const Sector& s : sectors(x)) out.append(sector_dict(s));
        return out;
    });

    m.def("sector_table",
          [](const StackDescriptor& x, const std::string& raising) {
              RaisingFunction c = resolve_raising(x, raising);
              py::list out;
              for (const Sector& s : sectors(x)) {
                  py::dict d = sector_dict(s);
                  d["c"] = c.at(s.label).str();
                  d["age_c"] = (s.age + c.at(s.label)).str();
                  out.append(d);
              }
              return out;
          },
          py::arg("stack"), py::arg("raising"),
          "sectors with ages, raising values and age_c");

    m.def("ab_invariants", [](const StackDescriptor& x, const std::string& raising) {
        auto [a, b] = ab_invariants(x, resolve_raising(x, raising));
        return py::make_tuple(a.str(), b);
    });

    m.def("invariants", [](const StackDescriptor& x, const std::string& raising) {
        RaisingFunction c = resolve_raising(x, raising);
        return report_dict(x.dim() == 0 ? ab_report(x, c) : fano_prediction(x, c));
    });

    m.def("junior_count", [](const StackDescriptor& x, const std::string& raising) {
        return junior_count(x, resolve_raising(x, raising));
    });

    m.def("is_adequate", [](const StackDescriptor& x, const std::string& raising) {
        AdequacyResult res = is_adequate(x, resolve_raising(x, raising));
        return py::make_tuple(res.adequate, res.reason);
    });

    m.def("thin_scan", [](const StackDescriptor& x, const std::string& raising) {
        py::list out;
        for (const ThinVerdict& v : subgroup_scan(x, resolve_raising(x, raising)))
            out.append(verdict_dict(v));
        return out;
    });

    m.def("kluners_report", []() {
        KlunersReport rep = kluners_report();
        py::dict d;
        d["group"] = "degree=6; gens=" + rep.group.generators_string();
        d["a"] = rep.a.str();
        d["b"] = rep.b;
        py::list subs, twists;
        for (const auto& v : rep.subgroup_verdicts) subs.append(verdict_dict(v));
        for (const auto& v : rep.twist_verdicts) twists.append(verdict_dict(v));
        d["subgroup_verdicts"] = subs;
        d["twist_verdicts"] = twists;
        d["ind_comprehensive"] = rep.comprehensiveness.comprehensive;
        d["witness"] = rep.comprehensiveness.comprehensive
                           ? py::object(py::none())
                           : py::object(py::str(rep.comprehensiveness.witness_label));
        return d;
    });

    m.def("mu_residue", &mu_residue, py::arg("a"), py::arg("p"), py::arg("l"));

    m.def("mu_height",
          [](long long a, long long l, const std::string& raising) {
              StackDescriptor x = StackDescriptor::mu(l);
              FormalHeight h = mu_height(a, l, resolve_raising(x, raising));
              py::dict finite;
              for (const auto& [p, e] : h.finite) finite[py::int_(p)] = e.str();
              py::dict d;
              d["finite"] = finite;
              d["archimedean"] = h.archimedean;
              d["value"] = h.value();
              return d;
          },
          py::arg("a"), py::arg("l"), py::arg("raising"));

    m.def("wps_residue",
          [](const std::vector<long long>& weights, const std::vector<long long>& coords,
             long long p) { return wps_residue(weights, WpsTuple{coords}, p).str(); });

    m.def("wps_height",
          [](const std::vector<long long>& weights, const std::vector<long long>& coords,
             const std::string& variant) {
              FormalHeight h = wps_height(weights, WpsTuple{coords}, variant_from(variant));
              py::dict finite;
              for (const auto& [p, e] : h.finite) finite[py::int_(p)] = e.str();
              py::dict d;
              d["finite"] = finite;
              d["archimedean"] = h.archimedean;
              d["value"] = h.value();
              return d;
          },
          py::arg("weights"), py::arg("coords"), py::arg("variant") = "quasitoric");

    m.def("mu_count",
          [](long long l, const std::string& raising, const std::vector<double>& b_samples,
             int workers) {
              StackDescriptor x = StackDescriptor::mu(l);
              CountOptions opts;
              opts.workers = workers;
              CountSeries s = mu_count(l, resolve_raising(x, raising), b_samples, opts);
              return s.samples;
          },
          py::arg("l"), py::arg("raising"), py::arg("b_samples"), py::arg("workers") = 1);

    m.def("mu_sieve_oracle",
          [](long long l, const std::string& raising, long long b) {
              StackDescriptor x = StackDescriptor::mu(l);
              return mu_sieve_oracle(l, resolve_raising(x, raising), b);
          });

    m.def("wps_count",
          [](const std::vector<long long>& weights, const std::string& variant,
             const std::vector<long long>& b_samples, int workers) {
              CountOptions opts;
              opts.workers = workers;
              return wps_count(weights, variant_from(variant), b_samples, opts).samples;
          },
          py::arg("weights"), py::arg("variant"), py::arg("b_samples"), py::arg("workers") = 1);

    m.def("wps_oracle_counts",
          [](const std::vector<long long>& weights, const std::string& variant,
             const std::vector<long long>& thresholds) {
              return wps_oracle_counts(weights, variant_from(variant), thresholds);
          });

    m.def("fit_exponents",
          [](const std::vector<std::pair<double, long long>>& samples,
             std::optional<double> fix_alpha) {
              CountSeries s;
              s.samples = samples;
              FitResult f = fit_exponents(s, fix_alpha);
              py::dict d;
              d["alpha"] = f.alpha;
              d["log_exponent"] = f.log_exponent;
              d["constant"] = f.constant;
              d["residual"] = f.residual;
              d["mode"] = f.fixed_alpha ? "fixed_alpha" : "free";
              return d;
          },
          py::arg("samples"), py::arg("fix_alpha") = py::none());
}
