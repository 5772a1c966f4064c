#include "qgi/scene_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qgi/diagram.hpp"
#include "qgi/errors.hpp"

namespace qgi {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::SchemaError, where + ": " + what);
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

/// JSON has no NaN or Infinity; treat those tokens as a schema problem so the
/// message names the real issue.
bool non_finite_token_at(std::string_view text, std::size_t byte) {
    const std::size_t from = byte > 12 ? byte - 12 : 0;
    const std::string_view near = text.substr(from, 24);
    return near.find("NaN") != std::string_view::npos || near.find("Infinity") != std::string_view::npos;
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) schema(where, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) schema(where, "number is not finite");
    return v;
}

std::size_t index(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) schema(where, "expected a non-negative integer");
    return j.get<std::size_t>();
}

std::string identifier(const json& obj, const std::string& where) {
    if (!obj.contains("id") || !obj["id"].is_string() || obj["id"].get<std::string>().empty())
        schema(where + ".id", "expected a non-empty string");
    return obj["id"].get<std::string>();
}

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) schema(where, "expected an object");
    for (const auto& [key, _] : obj.items())
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            schema(where, "unknown field '" + key + "'");
}

template <std::size_t N>
Vec<N> point(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != N) schema(where, "expected " + std::to_string(N) + " coordinates");
    Vec<N> p;
    for (std::size_t k = 0; k < N; ++k) p[k] = number(j[k], where + "[" + std::to_string(k) + "]");
    return p;
}

const json& array_field(const json& obj, const char* key, const std::string& where) {
    static const json empty = json::array();
    if (!obj.contains(key)) return empty;
    if (!obj[key].is_array()) schema(where + "." + key, "expected an array");
    return obj[key];
}

/// Accepts "vertices" or the dimension-suffixed alias.
const json& vertex_field(const json& obj, const char* alias, const std::string& where) {
    if (obj.contains("vertices") && obj.contains(alias)) schema(where, "both 'vertices' and '" + std::string(alias) + "'");
    const char* key = obj.contains(alias) ? alias : "vertices";
    if (!obj.contains(key) || !obj[key].is_array()) schema(where + ".vertices", "expected an array");
    return obj[key];
}

std::vector<Triangle> triangles(const json& obj, std::size_t n_vertices, const std::string& where) {
    if (!obj.contains("triangles") || !obj["triangles"].is_array()) schema(where + ".triangles", "expected an array");
    std::vector<Triangle> out;
    for (std::size_t i = 0; i < obj["triangles"].size(); ++i) {
        const std::string w = where + ".triangles[" + std::to_string(i) + "]";
        const json& t = obj["triangles"][i];
        if (!t.is_array() || t.size() != 3) schema(w, "expected 3 vertex indices");
        Triangle tri;
        for (std::size_t k = 0; k < 3; ++k) {
            tri[k] = index(t[k], w);
            if (tri[k] >= n_vertices) schema(w, "vertex index " + std::to_string(tri[k]) + " out of range");
        }
        out.push_back(tri);
    }
    return out;
}

void parse_loops(const json& arr, const std::string& name, bool allow_nodes, Hyperlink& h, std::vector<Node>& nodes) {
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = name + "[" + std::to_string(i) + "]";
        const json& obj = arr[i];
        only_keys(obj, {"id", "vertices", "nodes"}, where);
        Loop l{identifier(obj, where), {}};
        if (!obj.contains("vertices") || !obj["vertices"].is_array()) schema(where + ".vertices", "expected an array");
        for (std::size_t k = 0; k < obj["vertices"].size(); ++k)
            l.vertices.push_back(point<4>(obj["vertices"][k], where + ".vertices[" + std::to_string(k) + "]"));
        if (l.vertices.size() < 3) schema(where + ".vertices", "a loop needs at least 3 vertices");
        if (l.vertices.front() == l.vertices.back())
            schema(where + ".vertices", "loops close implicitly; drop the repeated last vertex");
        const json& nd = array_field(obj, "nodes", where);
        if (!nd.empty() && !allow_nodes) schema(where + ".nodes", "nodes are only allowed on matter loops");
        for (std::size_t k = 0; k < nd.size(); ++k) {
            const std::string w = where + ".nodes[" + std::to_string(k) + "]";
            only_keys(nd[k], {"edge", "u", "sign"}, w);
            if (!nd[k].contains("edge") || !nd[k].contains("u") || !nd[k].contains("sign"))
                schema(w, "expected edge, u and sign");
            Node n;
            n.loop_id = l.id;
            n.edge = index(nd[k]["edge"], w + ".edge");
            if (n.edge >= l.vertices.size()) schema(w + ".edge", "edge index out of range");
            n.u = number(nd[k]["u"], w + ".u");
            if (!(n.u > 0.0 && n.u < 1.0)) schema(w + ".u", "parameter must lie in (0,1)");
            if (!nd[k]["sign"].is_number_integer()) schema(w + ".sign", "expected +1 or -1");
            n.sign = nd[k]["sign"].get<int>();
            if (n.sign != 1 && n.sign != -1) schema(w + ".sign", "expected +1 or -1");
            nodes.push_back(n);
        }
        h.loops.push_back(std::move(l));
    }
}

json loop_json(const Loop& l, const std::vector<Node>& nodes) {
    json j;
    j["id"] = l.id;
    j["vertices"] = json::array();
    for (const auto& v : l.vertices) j["vertices"].push_back({v[0], v[1], v[2], v[3]});
    json nd = json::array();
    for (const auto& n : nodes)
        if (n.loop_id == l.id) nd.push_back({{"edge", n.edge}, {"u", n.u}, {"sign", n.sign}});
    if (!nd.empty()) j["nodes"] = nd;
    return j;
}

json triangles_json(const std::vector<Triangle>& tris) {
    json a = json::array();
    for (const auto& t : tris) a.push_back({t[0], t[1], t[2]});
    return a;
}

json report_json(const InvariantReport& r) {
    json j;
    if (r.sk) {
        j["sk"] = *r.sk;
        j["sk_status"] = r.sk_invariant.value_or(true) ? "Invariant" : "NotAnInvariant";
    }
    if (!r.lk_surface.empty()) {
        json lk = json::object();
        for (const auto& [sid, row] : r.lk_surface) {
            lk[sid] = json::object();
            for (const auto& [axis, v] : row) lk[sid][axis] = v;
        }
        j["lk_surface"] = lk;
    }
    if (!r.nu_S.empty()) {
        json nu = json::object();
        for (const auto& [sid, v] : r.nu_S) {
            json e{{"value", v.value}, {"exactness", to_string(v.exactness)}};
            if (v.lower_bound) e["lower_bound"] = *v.lower_bound;
            nu[sid] = e;
        }
        j["nu_S"] = nu;
    }
    if (!r.nu_R.empty()) {
        json nu = json::object();
        for (const auto& [rid, v] : r.nu_R) nu[rid] = v;
        j["nu_R"] = nu;
    }
    json viol = json::array();
    for (const auto& v : r.validation.violations) viol.push_back({{"kind", to_string(v.kind)}, {"detail", v.detail}});
    j["validation"] = {{"valid", r.validation.ok()}, {"violations", viol}};
    json prov{{"tool", r.provenance.tool}, {"version", r.provenance.version}};
    if (r.provenance.seed) prov["seed"] = *r.provenance.seed;
    j["provenance"] = prov;
    return j;
}

ViolationKind violation_kind_from(const std::string& name) {
    for (int k = 0; k <= static_cast<int>(ViolationKind::OnBoundary); ++k)
        if (to_string(static_cast<ViolationKind>(k)) == name) return static_cast<ViolationKind>(k);
    schema("validation.violations", "unknown kind '" + name + "'");
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf[0] == '-' && std::string(buf) == "-0.000" ? "0.000" : buf;
}

}  // namespace

Scene parse_scene(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte);
        const std::string where = "line " + std::to_string(line) + ", column " + std::to_string(col);
        if (non_finite_token_at(text, e.byte)) throw Error(ErrorKind::SchemaError, where + ": number is not finite");
        throw Error(ErrorKind::ParseError, where + ": malformed JSON");
    }
    only_keys(root, {"tolerance", "matter_hyperlink", "geometric_hyperlink", "surfaces", "regions"}, "scene");

    Scene s;
    if (root.contains("tolerance")) {
        s.tolerance = number(root["tolerance"], "tolerance");
        if (!(s.tolerance > 0.0)) schema("tolerance", "must be positive");
    }
    parse_loops(array_field(root, "matter_hyperlink", "scene"), "matter_hyperlink", true, s.matter, s.nodes);
    parse_loops(array_field(root, "geometric_hyperlink", "scene"), "geometric_hyperlink", false, s.geometric, s.nodes);

    const json& surfaces = array_field(root, "surfaces", "scene");
    for (std::size_t i = 0; i < surfaces.size(); ++i) {
        const std::string where = "surfaces[" + std::to_string(i) + "]";
        only_keys(surfaces[i], {"id", "vertices", "vertices4", "triangles"}, where);
        Surface4 m{identifier(surfaces[i], where), {}, {}};
        const json& verts = vertex_field(surfaces[i], "vertices4", where);
        for (std::size_t k = 0; k < verts.size(); ++k)
            m.vertices.push_back(point<4>(verts[k], where + ".vertices[" + std::to_string(k) + "]"));
        m.triangles = triangles(surfaces[i], m.vertices.size(), where);
        s.surfaces.push_back(std::move(m));
    }
    const json& regions = array_field(root, "regions", "scene");
    for (std::size_t i = 0; i < regions.size(); ++i) {
        const std::string where = "regions[" + std::to_string(i) + "]";
        only_keys(regions[i], {"id", "vertices", "vertices3", "triangles"}, where);
        Region3 g{identifier(regions[i], where), {}, {}};
        const json& verts = vertex_field(regions[i], "vertices3", where);
        for (std::size_t k = 0; k < verts.size(); ++k)
            g.vertices.push_back(point<3>(verts[k], where + ".vertices[" + std::to_string(k) + "]"));
        g.triangles = triangles(regions[i], g.vertices.size(), where);
        s.regions.push_back(std::move(g));
    }

    std::set<std::string> ids;
    for (const auto& l : s.all_loops())
        if (!ids.insert(l.id).second) schema("scene", "duplicate loop id '" + l.id + "'");
    ids.clear();
    for (const auto& m : s.surfaces)
        if (!ids.insert(m.id).second) schema("scene", "duplicate surface id '" + m.id + "'");
    ids.clear();
    for (const auto& g : s.regions)
        if (!ids.insert(g.id).second) schema("scene", "duplicate region id '" + g.id + "'");
    return s;
}

std::string serialize_scene(const Scene& s) {
    json j;
    j["tolerance"] = s.tolerance;
    j["matter_hyperlink"] = json::array();
    for (const auto& l : s.matter.loops) j["matter_hyperlink"].push_back(loop_json(l, s.nodes));
    j["geometric_hyperlink"] = json::array();
    for (const auto& l : s.geometric.loops) j["geometric_hyperlink"].push_back(loop_json(l, {}));
    j["surfaces"] = json::array();
    for (const auto& m : s.surfaces) {
        json v = json::array();
        for (const auto& p : m.vertices) v.push_back({p[0], p[1], p[2], p[3]});
        j["surfaces"].push_back({{"id", m.id}, {"vertices", v}, {"triangles", triangles_json(m.triangles)}});
    }
    j["regions"] = json::array();
    for (const auto& g : s.regions) {
        json v = json::array();
        for (const auto& p : g.vertices) v.push_back({p[0], p[1], p[2]});
        j["regions"].push_back({{"id", g.id}, {"vertices", v}, {"triangles", triangles_json(g.triangles)}});
    }
    return j.dump(2) + "\n";
}

std::string serialize_report(const InvariantReport& r) { return report_json(r).dump(2) + "\n"; }

InvariantReport parse_report(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte);
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                               ": malformed JSON");
    }
    try {
        InvariantReport r;
        if (j.contains("sk")) {
            r.sk = j["sk"].get<int>();
            r.sk_invariant = j.at("sk_status").get<std::string>() == "Invariant";
        }
        if (j.contains("lk_surface"))
            for (const auto& [sid, row] : j["lk_surface"].items())
                for (const auto& [axis, v] : row.items()) r.lk_surface[sid][axis] = v.get<int>();
        if (j.contains("nu_S")) {
            for (const auto& [sid, e] : j["nu_S"].items()) {
                PiercingNumber nu;
                nu.value = e.at("value").get<int>();
                nu.exactness = e.at("exactness").get<std::string>() == "Exact" ? Exactness::Exact : Exactness::LowerBound;
                if (e.contains("lower_bound")) nu.lower_bound = e["lower_bound"].get<int>();
                r.nu_S[sid] = nu;
            }
        }
        if (j.contains("nu_R"))
            for (const auto& [rid, v] : j["nu_R"].items()) r.nu_R[rid] = v.get<int>();
        for (const auto& v : j.at("validation").at("violations"))
            r.validation.add(violation_kind_from(v.at("kind").get<std::string>()), v.at("detail").get<std::string>());
        const json& p = j.at("provenance");
        r.provenance.tool = p.at("tool").get<std::string>();
        r.provenance.version = p.at("version").get<std::string>();
        if (p.contains("seed")) r.provenance.seed = p["seed"].get<std::uint64_t>();
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::SchemaError, std::string("report: ") + e.what());
    }
}

std::string serialize_fuzz_summary(const FuzzSummary& f, std::size_t steps_requested) {
    json j = report_json(f.invariants);
    json by_kind = json::object(), by_reason = json::object();
    for (const auto& [k, n] : f.accepted_by_kind) by_kind[k] = n;
    for (const auto& [k, n] : f.skipped_by_reason) by_reason[k] = n;
    j["fuzz"] = {{"steps", steps_requested},          {"attempts", f.attempts},
                 {"accepted", f.accepted},            {"skipped", f.skipped},
                 {"accepted_by_kind", by_kind},       {"skipped_by_reason", by_reason}};
    return j.dump(2) + "\n";
}

std::string render_svg(const Scene& s, Plane plane) {
    const auto loops = s.all_loops();
    std::vector<Polyline3> link;
    for (const auto& l : loops) link.push_back(spatial_projection(l));
    const Diagram d = build_diagram(link, plane, s.tolerance);

    constexpr double size = 600.0, margin = 40.0, gap = 7.0;
    double lo[2] = {0, 0}, hi[2] = {1, 1};
    bool any = false;
    for (const auto& strand : d.strands)
        for (const auto& p : strand)
            for (int k = 0; k < 2; ++k) {
                lo[k] = any ? std::min(lo[k], p[k]) : p[k];
                hi[k] = any ? std::max(hi[k], p[k]) : p[k];
                any = any || k == 1;
            }
    const double span = std::max({hi[0] - lo[0], hi[1] - lo[1], 1e-9});
    const double scale = (size - 2 * margin) / span;
    auto sx = [&](const Point2& p) { return margin + (p[0] - lo[0]) * scale; };
    auto sy = [&](const Point2& p) { return size - margin - (p[1] - lo[1]) * scale; };
    auto colour = [&](std::size_t strand) { return strand < s.matter.loops.size() ? "#1f5fa8" : "#b03a2e"; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
    os << "<title>" << to_string(plane) << " diagram</title>\n";
    os << "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < d.strands.size(); ++i) {
        os << "<polyline class=\"strand\" data-loop=\"" << loops[i].id << "\" fill=\"none\" stroke=\"" << colour(i)
           << "\" stroke-width=\"2\" points=\"";
        const auto& st = d.strands[i];
        for (std::size_t k = 0; k <= st.size(); ++k) {
            const Point2& p = st[k % st.size()];
            os << (k ? " " : "") << fixed(sx(p)) << "," << fixed(sy(p));
        }
        os << "\"/>\n";
    }
    auto segment = [&](const StrandRef& ref, const char* cls, const char* stroke, double width) {
        const auto& st = d.strands[ref.strand];
        const Point2 a = st[ref.edge % st.size()], b = st[(ref.edge + 1) % st.size()];
        const Point2 c = lerp(a, b, ref.u);
        Point2 dir{{sx(b) - sx(a), sy(b) - sy(a)}};
        dir *= 1.0 / std::max(norm(dir), 1e-12);
        os << "<line class=\"" << cls << "\" x1=\"" << fixed(sx(c) - dir[0] * gap) << "\" y1=\""
           << fixed(sy(c) - dir[1] * gap) << "\" x2=\"" << fixed(sx(c) + dir[0] * gap) << "\" y2=\""
           << fixed(sy(c) + dir[1] * gap) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"/>\n";
    };
    for (const auto& c : d.crossings) {
        segment(c.under, "crossing-gap", "white", 6);
        segment(c.over, "over-strand", colour(c.over.strand), 2);
        os << "<text class=\"eps\" x=\"" << fixed(sx(c.point) + 6) << "\" y=\"" << fixed(sy(c.point) - 6)
           << "\" font-size=\"11\" font-family=\"sans-serif\">" << (c.eps > 0 ? "+1" : "-1") << "</text>\n";
    }
    for (const auto& n : s.nodes) {
        for (std::size_t i = 0; i < loops.size(); ++i) {
            if (loops[i].id != n.loop_id || n.edge >= loops[i].size()) continue;
            const Point2 p = plane_coords(spatial(loops[i].point_at(n.edge, n.u)), plane);
            os << "<circle class=\"node\" cx=\"" << fixed(sx(p)) << "\" cy=\"" << fixed(sy(p))
               << "\" r=\"4\" fill=\"black\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            std::filesystem::remove(tmp);
            throw Error(ErrorKind::InvalidInput, "cannot write " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace qgi
