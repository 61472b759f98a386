#include "gwpt/json_io.hpp"

#include <stdexcept>

namespace gwpt {

namespace {

Integer integer_from_json(const json &j) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) {
        Integer z;
        if (z.set_str(j.get<std::string>(), 10) != 0)
            throw std::invalid_argument("malformed integer: " + j.get<std::string>());
        return z;
    }
    throw std::invalid_argument("expected integer or decimal string");
}

long small_from_json(const json &j) {
    if (j.is_number_integer()) return j.get<long>();
    if (j.is_string()) return std::stol(j.get<std::string>());
    throw std::invalid_argument("expected small integer");
}

}  // namespace

json to_json(const Rational &r) { return r.get_str(); }

Rational rational_from_json(const json &j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw std::invalid_argument("expected rational string");
}

json to_json(const GaussianRational &z) { return json::array({to_json(z.re), to_json(z.im)}); }

GaussianRational gaussian_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("gaussian rational expects [re, im]");
    return {rational_from_json(j[0]), rational_from_json(j[1])};
}

json to_json(const LatticeVector &v) {
    return json::array({v.x.get_str(), v.y.get_str(), v.z.get_str()});
}

LatticeVector lattice_vector_from_json(const json &j) {
    if (!j.is_array() || j.size() != 3) throw std::invalid_argument("lattice vector expects [x,y,z]");
    return {integer_from_json(j[0]), integer_from_json(j[1]), integer_from_json(j[2])};
}

json to_json(const IntegerMatrix &m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j2 = 0; j2 < m.cols(); ++j2) row.push_back(m.at(i, j2).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

IntegerMatrix integer_matrix_from_json(const json &j) {
    if (!j.is_array()) throw std::invalid_argument("matrix expects array of rows");
    std::vector<std::vector<Integer>> rows;
    for (const auto &row : j) {
        std::vector<Integer> r;
        for (const auto &e : row) r.push_back(integer_from_json(e));
        rows.push_back(std::move(r));
    }
    return IntegerMatrix::from_rows(rows);
}

json to_json(const RationalPoint &p) {
    return json::array({p.x.get_str(), p.y.get_str(), p.z.get_str()});
}

RationalPoint rational_point_from_json(const json &j) {
    if (!j.is_array() || j.size() != 3) throw std::invalid_argument("point expects [x,y,z]");
    return {rational_from_json(j[0]), rational_from_json(j[1]), rational_from_json(j[2])};
}

json to_json(const ElementaryGeometry &g) {
    json out;
    out["kind"] = g.kind_name();
    out["subkind"] = g.subkind_name();
    if (g.kind() == GeometryKind::OneNonBoundary) {
        json psi = json::array();
        for (const auto &f : g.psi_functionals())
            psi.push_back(json::array({f[0].get_str(), f[1].get_str()}));
        out["psi"] = std::move(psi);
    }
    if (g.kind() == GeometryKind::TwoNonBoundary) {
        json p1 = json::array(), p2 = json::array();
        for (const auto &a : g.psi1_functionals()) p1.push_back(a.get_str());
        for (const auto &a : g.psi2_functionals()) p2.push_back(a.get_str());
        out["psi1"] = std::move(p1);
        out["psi2"] = std::move(p2);
    }
    json rays = json::array();
    for (const auto &r : g.collapsed_rays()) rays.push_back(to_json(r));
    out["collapsed_rays"] = std::move(rays);
    return out;
}

ElementaryGeometry geometry_from_json(const json &j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "full_boundary") return ElementaryGeometry::full_boundary();
    if (kind == "three_non_boundary") return ElementaryGeometry::three_non_boundary();
    if (kind == "one_non_boundary") {
        std::vector<std::array<Integer, 2>> psi;
        if (j.contains("psi"))
            for (const auto &f : j.at("psi")) {
                if (!f.is_array() || f.size() != 2)
                    throw std::invalid_argument("psi functional expects [a,b]");
                psi.push_back({integer_from_json(f[0]), integer_from_json(f[1])});
            }
        return ElementaryGeometry::one_non_boundary(std::move(psi));
    }
    if (kind == "two_non_boundary") {
        std::vector<Integer> p1, p2;
        if (j.contains("psi1"))
            for (const auto &a : j.at("psi1")) p1.push_back(integer_from_json(a));
        if (j.contains("psi2"))
            for (const auto &a : j.at("psi2")) p2.push_back(integer_from_json(a));
        return ElementaryGeometry::two_non_boundary(std::move(p1), std::move(p2));
    }
    throw std::invalid_argument("unknown geometry kind: " + kind);
}

json to_json(const Star &s) {
    json out;
    out["geometry"] = to_json(s.geometry);
    out["base"] = to_json(s.base);
    json rays = json::array();
    for (const auto &r : s.rays) {
        json jr;
        jr["dir"] = to_json(r.dir);
        jr["weight"] = r.weight;
        rays.push_back(std::move(jr));
    }
    out["rays"] = std::move(rays);
    out["k"] = s.internal_markings;
    return out;
}

Star star_from_json(const json &j) {
    ElementaryGeometry g = geometry_from_json(j.at("geometry"));
    RationalPoint base = rational_point_from_json(j.at("base"));
    std::vector<WeightedRay> rays;
    for (const auto &jr : j.at("rays"))
        rays.push_back({lattice_vector_from_json(jr.at("dir")), small_from_json(jr.at("weight"))});
    long k = j.contains("k") ? small_from_json(j.at("k")) : 0;
    return Star::make(std::move(g), std::move(base), std::move(rays), k);
}

json to_json(const ChowOneComplex &c) {
    json out;
    out["geometry"] = to_json(c.geometry);
    json vs = json::array();
    for (const auto &v : c.vertices) {
        json jv;
        jv["position"] = to_json(v.position);
        jv["carries_class"] = v.carries_class;
        json marks = json::array();
        for (long m : v.markings) marks.push_back(m);
        jv["markings"] = std::move(marks);
        vs.push_back(std::move(jv));
    }
    out["vertices"] = std::move(vs);
    json es = json::array();
    for (const auto &e : c.edges) {
        json je;
        je["tail"] = e.tail;
        je["head"] = e.head;
        je["weight"] = e.weight;
        es.push_back(std::move(je));
    }
    out["edges"] = std::move(es);
    json rs = json::array();
    for (const auto &r : c.rays) {
        json jr;
        jr["vertex"] = r.vertex;
        jr["dir"] = to_json(r.dir);
        jr["weight"] = r.weight;
        rs.push_back(std::move(jr));
    }
    out["rays"] = std::move(rs);
    if (c.allow_disconnected) out["allow_disconnected"] = true;
    return out;
}

ChowOneComplex complex_from_json(const json &j) {
    ElementaryGeometry g = geometry_from_json(j.at("geometry"));
    std::vector<ComplexVertex> vertices;
    for (const auto &jv : j.at("vertices")) {
        ComplexVertex v;
        v.position = rational_point_from_json(jv.at("position"));
        v.carries_class = jv.contains("carries_class") && jv.at("carries_class").get<bool>();
        if (jv.contains("markings"))
            for (const auto &m : jv.at("markings")) v.markings.insert(small_from_json(m));
        vertices.push_back(std::move(v));
    }
    std::vector<ComplexEdge> edges;
    if (j.contains("edges"))
        for (const auto &je : j.at("edges"))
            edges.push_back({static_cast<int>(small_from_json(je.at("tail"))),
                             static_cast<int>(small_from_json(je.at("head"))),
                             small_from_json(je.at("weight"))});
    std::vector<ComplexRay> rays;
    if (j.contains("rays"))
        for (const auto &jr : j.at("rays"))
            rays.push_back({static_cast<int>(small_from_json(jr.at("vertex"))),
                            lattice_vector_from_json(jr.at("dir")),
                            small_from_json(jr.at("weight"))});
    bool disc = j.contains("allow_disconnected") && j.at("allow_disconnected").get<bool>();
    return ChowOneComplex::make(std::move(g), std::move(vertices), std::move(edges),
                                std::move(rays), disc);
}

json to_json(const TruncatedULaurent &s) {
    json out;
    out["min_exponent"] = s.min_exponent();
    out["truncation_order"] = s.truncation_order();
    json coeffs = json::array();
    for (const auto &c : s.coefficients()) coeffs.push_back(to_json(c));
    out["coefficients"] = std::move(coeffs);
    return out;
}

TruncatedULaurent u_series_from_json(const json &j) {
    long min_exp = small_from_json(j.at("min_exponent"));
    std::vector<GaussianRational> coeffs;
    for (const auto &c : j.at("coefficients")) coeffs.push_back(gaussian_from_json(c));
    TruncatedULaurent s(min_exp, std::move(coeffs));
    if (j.contains("truncation_order") &&
        small_from_json(j.at("truncation_order")) != s.truncation_order())
        throw std::invalid_argument("truncation_order inconsistent with coefficient count");
    return s;
}

json to_json(const QForm &f) {
    json out;
    json num = json::array();
    for (const auto &[h, c] : f.numerator()) num.push_back(json::array({h, c.get_str()}));
    out["numerator"] = std::move(num);
    json den = json::array();
    for (const auto &[a, e] : f.denominator_factors()) den.push_back(json::array({a, e}));
    out["denominator_factors"] = std::move(den);
    return out;
}

QForm q_form_from_json(const json &j) {
    QForm f;
    for (const auto &t : j.at("numerator")) {
        if (!t.is_array() || t.size() != 2)
            throw std::invalid_argument("numerator term expects [h, coefficient]");
        f = f + QForm::half_monomial(small_from_json(t[0]), rational_from_json(t[1]));
    }
    if (j.contains("denominator_factors"))
        for (const auto &d : j.at("denominator_factors")) {
            if (!d.is_array() || d.size() != 2)
                throw std::invalid_argument("denominator factor expects [a, e]");
            f = f.with_denominator_factor(small_from_json(d[0]), small_from_json(d[1]));
        }
    return f;
}

namespace {

json data_to_json(const StarDiscreteData &d) {
    json out;
    out["d"] = d.d;
    out["ell_minus_size"] = d.ell_minus_size;
    return out;
}

StarDiscreteData data_from_json(const json &j) {
    StarDiscreteData d;
    d.d = small_from_json(j.at("d"));
    d.ell_minus_size = small_from_json(j.at("ell_minus_size"));
    return d;
}

}  // namespace

json to_json(const GWSeries &s) {
    json out;
    out["side"] = "gw";
    out["series"] = to_json(s.series);
    out["data"] = data_to_json(s.data);
    out["text"] = s.series.to_string();
    return out;
}

GWSeries gw_series_from_json(const json &j) {
    if (j.contains("side") && j.at("side").get<std::string>() != "gw")
        throw std::invalid_argument("expected a gw series");
    return GWSeries{u_series_from_json(j.at("series")), data_from_json(j.at("data"))};
}

json to_json(const PTSeries &s) {
    json out;
    out["side"] = "pt";
    out["form"] = to_json(s.form);
    out["data"] = data_to_json(s.data);
    out["text"] = s.form.to_string();
    return out;
}

PTSeries pt_series_from_json(const json &j) {
    if (j.contains("side") && j.at("side").get<std::string>() != "pt")
        throw std::invalid_argument("expected a pt series");
    return PTSeries{q_form_from_json(j.at("form")), data_from_json(j.at("data"))};
}

json to_json(const DegenerationCatalog &c) {
    json out;
    out["source"] = to_json(c.source);
    out["vertex_bound"] = c.vertex_bound;
    json cs = json::array();
    for (const auto &g : c.complexes) cs.push_back(to_json(g));
    out["complexes"] = std::move(cs);
    return out;
}

json to_json(const PartitionVector &mu) {
    json out = json::array();
    for (const auto &p : mu.partitions) {
        json jp = json::array();
        for (long part : p) jp.push_back(part);
        out.push_back(std::move(jp));
    }
    return out;
}

PartitionVector partition_vector_from_json(const json &j) {
    std::vector<std::vector<long>> parts;
    for (const auto &jp : j) {
        std::vector<long> p;
        for (const auto &e : jp) p.push_back(small_from_json(e));
        parts.push_back(std::move(p));
    }
    return PartitionVector::make(std::move(parts));
}

}  // namespace gwpt
