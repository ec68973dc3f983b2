#include "vpm/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace vpm::io {

namespace {

using nlohmann::json;

Point point_from_json(const json& node, const std::string& where) {
    if (!node.is_array() || node.empty()) {
        throw ParseError(where + ": expected a nonempty array of numbers");
    }
    std::vector<double> coords;
    coords.reserve(node.size());
    for (const auto& v : node) {
        if (!v.is_number()) {
            throw ParseError(where + ": expected a number");
        }
        coords.push_back(v.get<double>());
    }
    try {
        return Point(std::move(coords));
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
}

double number_field(const json& node, const char* key,
                    const std::string& where) {
    if (!node.contains(key) || !node[key].is_number()) {
        throw ParseError(where + ": missing numeric field '" + key + "'");
    }
    const double v = node[key].get<double>();
    if (!std::isfinite(v)) {
        throw ParseError(where + ": field '" + key + "' is not finite");
    }
    return v;
}

ConvexSetPtr set_from_json(const json& node, const std::string& where) {
    if (!node.is_object()) {
        throw ParseError(where + ": expected an object");
    }
    if (!node.contains("kind") || !node["kind"].is_string()) {
        throw ParseError(where + ": missing string field 'kind'");
    }
    const std::string kind = node["kind"].get<std::string>();
    try {
        if (kind == "halfspace") {
            return std::make_shared<Halfspace>(
                point_from_json(node.at("normal"), where + ".normal"),
                number_field(node, "offset", where));
        }
        if (kind == "hyperplane") {
            return std::make_shared<Hyperplane>(
                point_from_json(node.at("normal"), where + ".normal"),
                number_field(node, "offset", where));
        }
        if (kind == "hyperslab") {
            return std::make_shared<Hyperslab>(
                point_from_json(node.at("normal"), where + ".normal"),
                number_field(node, "lo", where),
                number_field(node, "hi", where));
        }
        if (kind == "ball") {
            return std::make_shared<Ball>(
                point_from_json(node.at("center"), where + ".center"),
                number_field(node, "radius", where));
        }
        if (kind == "box") {
            return std::make_shared<Box>(
                point_from_json(node.at("lo"), where + ".lo"),
                point_from_json(node.at("hi"), where + ".hi"));
        }
    } catch (const json::out_of_range&) {
        throw ParseError(where + ": missing field for kind '" + kind + "'");
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
    throw ParseError(where + ": unknown kind '" + kind + "'");
}

json point_to_json(const Point& p) { return json(p.coords()); }

json set_to_json(const ConvexSet& set, const std::string& where) {
    json node;
    if (const auto* h = dynamic_cast<const Halfspace*>(&set)) {
        node["kind"] = "halfspace";
        node["normal"] = point_to_json(h->normal());
        node["offset"] = h->offset();
    } else if (const auto* h = dynamic_cast<const Hyperplane*>(&set)) {
        node["kind"] = "hyperplane";
        node["normal"] = point_to_json(h->normal());
        node["offset"] = h->offset();
    } else if (const auto* s = dynamic_cast<const Hyperslab*>(&set)) {
        node["kind"] = "hyperslab";
        node["normal"] = point_to_json(s->normal());
        node["lo"] = s->lo();
        node["hi"] = s->hi();
    } else if (const auto* b = dynamic_cast<const Ball*>(&set)) {
        node["kind"] = "ball";
        node["center"] = point_to_json(b->center());
        node["radius"] = b->radius();
    } else if (const auto* b = dynamic_cast<const Box*>(&set)) {
        node["kind"] = "box";
        node["lo"] = point_to_json(b->lo());
        node["hi"] = point_to_json(b->hi());
    } else {
        throw std::invalid_argument(where +
                                    ": set kind is not serializable");
    }
    return node;
}

}  // namespace

ProblemDocument parse_problem(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("problem file: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("problem file: top level must be an object");
    }
    if (!doc.contains("dim") || !doc["dim"].is_number_unsigned()) {
        throw ParseError("problem file: missing positive integer 'dim'");
    }
    const std::size_t dim = doc["dim"].get<std::size_t>();
    if (dim == 0) {
        throw ParseError("problem file: 'dim' must be >= 1");
    }
    if (!doc.contains("sets") || !doc["sets"].is_array() ||
        doc["sets"].empty()) {
        throw ParseError("problem file: missing nonempty array 'sets'");
    }

    std::vector<ConvexSetPtr> sets;
    std::vector<double> betas;
    std::vector<Hyperslab> slabs;
    bool slab_only = true;
    std::size_t index = 0;
    for (const auto& node : doc["sets"]) {
        std::ostringstream prefix;
        prefix << "sets[" << index << "]";
        const std::string where = prefix.str();
        auto set = set_from_json(node, where);
        if (set->dim() != dim) {
            throw ParseError(where + ": dimension " +
                             std::to_string(set->dim()) +
                             " does not match 'dim' = " +
                             std::to_string(dim));
        }
        const auto* slab = dynamic_cast<const Hyperslab*>(set.get());
        if (slab && !node.contains("beta")) {
            // The slab denotes the enlargement itself: split into its
            // median hyperplane and geometric half-width.
            if (slab->hi() == slab->lo()) {
                throw ParseError(where +
                                 ": zero-width slab needs an explicit "
                                 "'beta'");
            }
            betas.push_back(slab->half_width());
            slabs.push_back(*slab);
            sets.push_back(
                std::make_shared<Hyperplane>(slab->median_hyperplane()));
        } else {
            const double beta = number_field(node, "beta", where);
            if (!(beta > 0.0)) {
                throw ParseError(where + ": 'beta' must be > 0");
            }
            if (slab) {
                // Enlarging a slab by beta yields a wider slab; keep that
                // form for the ARM view of the problem.
                const double scaled =
                    beta * std::sqrt(linalg::inner(slab->normal(),
                                                   slab->normal()));
                slabs.emplace_back(slab->normal(), slab->lo() - scaled,
                                   slab->hi() + scaled);
            } else {
                slab_only = false;
            }
            betas.push_back(beta);
            sets.push_back(std::move(set));
        }
        ++index;
    }

    std::optional<Point> feasible;
    if (doc.contains("feasible")) {
        feasible = point_from_json(doc["feasible"], "feasible");
        if (feasible->dim() != dim) {
            throw ParseError("feasible: dimension does not match 'dim'");
        }
    }

    ProblemDocument out{FeasibilityProblem(std::move(sets), std::move(betas)),
                        std::move(feasible), std::nullopt};
    if (slab_only) {
        out.slabs = std::move(slabs);
    }
    return out;
}

ProblemDocument load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open problem file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

std::string serialize_problem(const ProblemDocument& doc) {
    json out;
    out["dim"] = doc.problem.dim();
    json sets = json::array();
    for (std::size_t i = 0; i < doc.problem.size(); ++i) {
        std::ostringstream where;
        where << "sets[" << i << "]";
        json node = set_to_json(*doc.problem.sets[i], where.str());
        node["beta"] = doc.problem.betas[i];
        sets.push_back(std::move(node));
    }
    out["sets"] = std::move(sets);
    if (doc.feasible) {
        out["feasible"] = point_to_json(*doc.feasible);
    }
    return out.dump(2) + "\n";
}

}  // namespace vpm::io
