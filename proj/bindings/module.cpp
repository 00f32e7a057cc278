#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "leech/bound.hpp"
#include "leech/catalog.hpp"
#include "leech/code.hpp"
#include "leech/congruence.hpp"
#include "leech/search.hpp"

namespace py = pybind11;
using namespace leech;

namespace {

Hole hole_by_id(const std::string& catalog_path, const std::string& id) {
    Catalog cat = ingest(catalog_path);
    const HoleRecord* rec = cat.find(id);
    if (!rec) throw bad_format("no record with id " + id);
    return Hole::analyze(LatticeModel::standard(), *rec);
}

py::dict invariants_dict(const HoleInvariants& inv) {
    py::dict d;
    d["deep"] = inv.deep;
    d["m"] = py::int_(py::str(inv.m.get_str()));
    d["N"] = py::int_(py::str(inv.n.get_str()));
    d["R2"] = rat_str(inv.r2);
    if (!inv.s_infinite) d["s"] = rat_str(inv.s);
    d["theta2"] = rat_str(inv.theta2);
    d["volume"] = rat_str(inv.volume);
    py::list feet;
    for (const auto& f : inv.foot_dist2) feet.append(rat_str(f));
    d["foot_dist2"] = feet;
    return d;
}

}  // namespace

PYBIND11_MODULE(_leechholes, m) {
    m.doc() = "exact computations with the holes of the Leech lattice";

    m.def(
        "shell_count",
        [](long norm, int threads) {
            EnumOptions opt;
            opt.threads = threads;
            return LatticeModel::standard().shell_count(norm, opt);
        },
        py::arg("norm"), py::arg("threads") = 2,
        "number of lattice vectors of the given even norm");

    m.def(
        "validate_basis",
        [](const std::string& path) {
            LatticeModel::load_file(path);
            return true;
        },
        py::arg("path"), "load and validate a generator matrix file");

    m.def(
        "phi", [](long d) { return phi(d).str(); }, py::arg("d"),
        "the bound phi(d) as an exact surd string");
    m.def(
        "phi_floor", [](long d) { return py::int_(py::str(phi_floor(d).get_str())); },
        py::arg("d"));
    m.def(
        "phi_approx", [](long d) { return phi(d).approx(); }, py::arg("d"));

    m.def(
        "verify_hole",
        [](const std::string& catalog_path, const std::string& id) {
            Catalog cat = ingest(catalog_path);
            const HoleRecord* rec = cat.find(id);
            if (!rec) throw bad_format("no record with id " + id);
            ValidationReport rep = validate_hole(LatticeModel::standard(), *rec);
            py::dict d;
            d["valid"] = rep.ok;
            d["deep"] = rep.deep;
            d["type"] = rep.computed_type;
            py::list fails;
            for (const auto& f : rep.failures) fails.append(f);
            d["failures"] = fails;
            return d;
        },
        py::arg("catalog"), py::arg("id"));

    m.def(
        "hole_invariants",
        [](const std::string& catalog_path, const std::string& id) {
            return invariants_dict(hole_by_id(catalog_path, id).invariants());
        },
        py::arg("catalog"), py::arg("id"));

    m.def(
        "search_hole",
        [](const std::string& type, double budget_seconds,
           int threads) -> py::object {
            DistanceTemplate t = DistanceTemplate::from_type(type);
            SubsetSearchOptions opt;
            opt.budget_seconds = budget_seconds;
            opt.threads = threads;
            auto sol = find_congruent_subset(LatticeModel::standard(), t, opt);
            if (!sol) return py::none();
            py::list rows;
            for (const auto& v : *sol) {
                py::list row;
                for (int i = 0; i < kDim; ++i) row.append(v.c[i]);
                rows.append(row);
            }
            return rows;
        },
        py::arg("type"), py::arg("budget_seconds") = 0.0, py::arg("threads") = 2,
        "search N<=6 for a vertex set of the given hole type");

    m.def(
        "gamma_code",
        [](const std::string& catalog_path, const std::string& id) {
            GammaResult g = gamma_from_hole(hole_by_id(catalog_path, id));
            py::dict d;
            d["n"] = py::int_(py::str(g.quotient.n.get_str()));
            d["p"] = g.code.p();
            d["length"] = g.code.length();
            d["dim"] = g.code.dim();
            d["weights"] = wd_string(weight_distribution(g.code));
            return d;
        },
        py::arg("catalog"), py::arg("id"));

    m.def(
        "is_golay",
        [](const std::string& code_path) {
            CodeOverFp c = CodeOverFp::load_file(code_path);
            return c.p() == 2 ? is_binary_golay(c) : is_ternary_golay(c);
        },
        py::arg("code_path"));

    m.def(
        "weight_distribution",
        [](const std::string& code_path) {
            CodeOverFp c = CodeOverFp::load_file(code_path);
            py::dict d;
            for (const auto& [w, n] : weight_distribution(c))
                d[py::int_(w)] = py::int_(py::str(n.get_str()));
            return d;
        },
        py::arg("code_path"));

    m.def(
        "verify_claims",
        [](const std::string& catalog_path, long d_max) {
            Catalog cat = ingest(catalog_path);
            const LatticeModel& model = LatticeModel::standard();
            std::vector<BoundProfile> profiles;
            for (const auto& rec : cat.records)
                profiles.push_back(BoundProfile::from(rec.id, Hole::analyze(model, rec).invariants()));
            ClaimReport rep = verify_claims(profiles, d_max);
            py::dict d;
            d["all_pass"] = rep.all_pass;
            py::list entries;
            for (const auto& e : rep.entries) {
                py::dict je;
                je["id"] = e.id;
                je["claim1"] = e.claim1;
                je["claim2"] = e.claim2;
                je["claim3"] = e.claim3;
                entries.append(je);
            }
            d["entries"] = entries;
            return d;
        },
        py::arg("catalog"), py::arg("d_max") = 20);

    py::register_exception<error>(m, "LeechError");
}
