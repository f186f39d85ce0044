#include "pdp/json_io.hpp"

#include <fstream>
#include <sstream>

namespace pdp {

using nlohmann::json;

namespace {

void warn_unknown_fields(const json& j, const std::vector<std::string>& known,
                         const std::string& where, std::vector<std::string>& warnings) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            warnings.push_back("unknown field \"" + key + "\" in " + where + " (ignored)");
        }
    }
}

double number_field(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw Error("instance schema: " + where + " needs numeric field \"" + key + "\"");
    }
    return j[key].get<double>();
}

int int_field(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
        throw Error("instance schema: " + where + " needs integer field \"" + key + "\"");
    }
    return j[key].get<int>();
}

}  // namespace

ParsedInstance instance_from_json(const json& j) {
    if (!j.is_object()) throw Error("instance schema: top level must be an object");
    ParsedInstance parsed;
    auto& inst = parsed.instance;
    warn_unknown_fields(j, {"depot", "working_day", "deliveries", "trucks", "travel_matrix"},
                        "instance", parsed.warnings);

    if (!j.contains("depot") || !j["depot"].is_object()) {
        throw Error("instance schema: missing depot object");
    }
    warn_unknown_fields(j["depot"], {"x", "y"}, "depot", parsed.warnings);
    inst.depot = {0, number_field(j["depot"], "x", "depot"), number_field(j["depot"], "y", "depot")};
    inst.working_day = number_field(j, "working_day", "instance");

    if (!j.contains("deliveries") || !j["deliveries"].is_array()) {
        throw Error("instance schema: missing deliveries array");
    }
    for (const auto& dj : j["deliveries"]) {
        const std::string where = "delivery";
        warn_unknown_fields(dj, {"id", "x", "y", "weight", "dimension", "tp_deadline",
                                 "customer_id"},
                            where, parsed.warnings);
        Delivery d;
        d.id = int_field(dj, "id", where);
        d.location = {d.id, number_field(dj, "x", where), number_field(dj, "y", where)};
        d.weight = number_field(dj, "weight", where);
        d.dimension = number_field(dj, "dimension", where);
        if (dj.contains("tp_deadline")) {
            if (!dj["tp_deadline"].is_number()) {
                throw Error("instance schema: tp_deadline must be numeric");
            }
            d.tp_deadline = dj["tp_deadline"].get<double>();
        }
        d.customer_id = dj.contains("customer_id") ? int_field(dj, "customer_id", where) : d.id;
        inst.deliveries.push_back(d);
    }

    if (!j.contains("trucks") || !j["trucks"].is_array()) {
        throw Error("instance schema: missing trucks array");
    }
    for (const auto& tj : j["trucks"]) {
        const std::string where = "truck";
        warn_unknown_fields(tj, {"id", "ownership", "max_weight", "max_dimension", "rental_cost"},
                            where, parsed.warnings);
        Truck t;
        t.id = int_field(tj, "id", where);
        if (!tj.contains("ownership") || !tj["ownership"].is_string()) {
            throw Error("instance schema: truck needs string field \"ownership\"");
        }
        const std::string own = tj["ownership"].get<std::string>();
        if (own == "owned") {
            t.ownership = Ownership::Owned;
        } else if (own == "rental") {
            t.ownership = Ownership::Rental;
        } else {
            throw Error("instance schema: ownership must be \"owned\" or \"rental\", got \"" +
                        own + "\"");
        }
        t.max_weight = number_field(tj, "max_weight", where);
        t.max_dimension = number_field(tj, "max_dimension", where);
        t.rental_cost = tj.contains("rental_cost") ? number_field(tj, "rental_cost", where) : 0.0;
        inst.fleet.push_back(t);
    }

    if (j.contains("travel_matrix")) {
        const auto& mj = j["travel_matrix"];
        if (!mj.is_array()) throw Error("instance schema: travel_matrix must be an array of rows");
        const std::size_t n = mj.size();
        TravelMatrix m(n);
        for (std::size_t r = 0; r < n; ++r) {
            if (!mj[r].is_array() || mj[r].size() != n) {
                throw Error("instance schema: travel_matrix must be square");
            }
            for (std::size_t c = 0; c < n; ++c) {
                if (!mj[r][c].is_number()) {
                    throw Error("instance schema: travel_matrix entries must be numeric");
                }
                m.set(static_cast<int>(r), static_cast<int>(c), mj[r][c].get<double>());
            }
        }
        inst.travel = std::move(m);
    }
    return parsed;
}

json instance_to_json(const ProblemInstance& instance) {
    json j;
    j["depot"] = {{"x", instance.depot.x}, {"y", instance.depot.y}};
    j["working_day"] = instance.working_day;
    j["deliveries"] = json::array();
    for (const auto& d : instance.deliveries) {
        json dj = {{"id", d.id},       {"x", d.location.x},
                   {"y", d.location.y}, {"weight", d.weight},
                   {"dimension", d.dimension}, {"customer_id", d.customer_id}};
        if (d.tp_deadline) dj["tp_deadline"] = *d.tp_deadline;
        j["deliveries"].push_back(dj);
    }
    j["trucks"] = json::array();
    for (const auto& t : instance.fleet) {
        j["trucks"].push_back({{"id", t.id},
                               {"ownership", t.ownership == Ownership::Owned ? "owned" : "rental"},
                               {"max_weight", t.max_weight},
                               {"max_dimension", t.max_dimension},
                               {"rental_cost", t.rental_cost}});
    }
    if (instance.travel) {
        json rows = json::array();
        const auto& m = *instance.travel;
        for (std::size_t r = 0; r < m.size(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < m.size(); ++c) {
                row.push_back(m.at(static_cast<int>(r), static_cast<int>(c)));
            }
            rows.push_back(row);
        }
        j["travel_matrix"] = rows;
    }
    return j;
}

namespace {

json visits_to_json(const std::vector<Visit>& visits) {
    json arr = json::array();
    for (const auto& v : visits) {
        json vj = {{"location", v.location_id}, {"arrival", v.arrival}};
        if (v.delivery_id >= 0) vj["delivery"] = v.delivery_id;
        arr.push_back(vj);
    }
    return arr;
}

std::vector<Visit> visits_from_json(const json& arr) {
    std::vector<Visit> visits;
    for (const auto& vj : arr) {
        Visit v;
        v.location_id = vj.at("location").get<int>();
        v.arrival = vj.at("arrival").get<double>();
        v.delivery_id = vj.contains("delivery") ? vj["delivery"].get<int>() : -1;
        visits.push_back(v);
    }
    return visits;
}

TrajectoryType trajectory_from_name(const std::string& name) {
    if (name == "regular") return TrajectoryType::Regular;
    if (name == "depot-tp") return TrajectoryType::DepotTp;
    if (name == "tp-tp") return TrajectoryType::TpTp;
    if (name == "tp-depot") return TrajectoryType::TpDepot;
    throw Error("unknown trajectory type \"" + name + "\"");
}

Backend backend_from_name(const std::string& name) {
    if (name == "exact") return Backend::Exact;
    if (name == "anneal") return Backend::Anneal;
    if (name == "auto") return Backend::Auto;
    throw Error("unknown backend \"" + name + "\"");
}

}  // namespace

json solution_to_json(const PlanSolution& solution) {
    json j;
    j["routes"] = json::array();
    for (const auto& route : solution.routes) {
        json rj;
        rj["truck_id"] = route.truck_id;
        rj["distance"] = route.total_distance;
        rj["weight"] = route.total_weight;
        rj["dimension"] = route.total_dimension;
        rj["visits"] = visits_to_json(route.visits);
        rj["subroutes"] = json::array();
        for (const auto& sub : route.subroutes) {
            json sj;
            sj["type"] = trajectory_name(sub.type);
            sj["solved_by"] = backend_name(sub.solved_by);
            sj["origin"] = sub.origin_location;
            sj["destination"] = sub.destination_location;
            sj["start_time"] = sub.start_time;
            sj["distance"] = sub.route.total_duration;
            sj["weight"] = sub.route.total_weight;
            sj["dimension"] = sub.route.total_dimension;
            sj["served"] = sub.route.served_delivery_ids;
            sj["candidate_pool"] = sub.candidate_pool;
            sj["srp_variables"] = sub.srp_variables;
            sj["srp_constraints"] = sub.srp_constraints;
            sj["visits"] = visits_to_json(sub.visits);
            rj["subroutes"].push_back(sj);
        }
        j["routes"].push_back(rj);
    }
    j["totals"] = {{"distance", solution.totals.distance},
                   {"rental_cost", solution.totals.rental_cost},
                   {"trucks_used", solution.totals.trucks_used},
                   {"subroute_mix", solution.totals.subroute_mix}};
    j["srp_stats"] = {{"count", solution.srp_count},
                      {"variables", solution.total_srp_variables},
                      {"constraints", solution.total_srp_constraints}};
    j["notes"] = solution.notes;
    return j;
}

PlanSolution solution_from_json(const json& j) {
    PlanSolution solution;
    if (!j.is_object() || !j.contains("routes") || !j["routes"].is_array()) {
        throw MalformedSolution("solution JSON needs a routes array");
    }
    for (const auto& rj : j["routes"]) {
        FullRoute route;
        route.truck_id = rj.at("truck_id").get<int>();
        route.total_distance = rj.at("distance").get<double>();
        route.total_weight = rj.value("weight", 0.0);
        route.total_dimension = rj.value("dimension", 0.0);
        route.visits = visits_from_json(rj.at("visits"));
        if (rj.contains("subroutes")) {
            for (const auto& sj : rj["subroutes"]) {
                SubRoute sub;
                sub.type = trajectory_from_name(sj.at("type").get<std::string>());
                sub.solved_by = backend_from_name(sj.value("solved_by", "exact"));
                sub.origin_location = sj.value("origin", 0);
                sub.destination_location = sj.value("destination", 0);
                sub.start_time = sj.value("start_time", 0.0);
                sub.candidate_pool = sj.value("candidate_pool", 0);
                sub.srp_variables = sj.value("srp_variables", 0);
                sub.srp_constraints = sj.value("srp_constraints", 0);
                if (sj.contains("visits")) sub.visits = visits_from_json(sj["visits"]);
                sub.route.total_duration = sj.value("distance", 0.0);
                sub.route.total_weight = sj.value("weight", 0.0);
                sub.route.total_dimension = sj.value("dimension", 0.0);
                if (sj.contains("served")) {
                    sub.route.served_delivery_ids = sj["served"].get<std::vector<int>>();
                }
                route.subroutes.push_back(std::move(sub));
            }
        }
        solution.routes.push_back(std::move(route));
    }
    if (j.contains("totals")) {
        const auto& tj = j["totals"];
        solution.totals.distance = tj.value("distance", 0.0);
        solution.totals.rental_cost = tj.value("rental_cost", 0.0);
        solution.totals.trucks_used = tj.value("trucks_used", 0);
        if (tj.contains("subroute_mix")) {
            const auto mix = tj["subroute_mix"].get<std::vector<int>>();
            for (std::size_t k = 0; k < mix.size() && k < 4; ++k) {
                solution.totals.subroute_mix[k] = mix[k];
            }
        }
    }
    if (j.contains("srp_stats")) {
        solution.srp_count = j["srp_stats"].value("count", 0);
        solution.total_srp_variables = j["srp_stats"].value("variables", 0LL);
        solution.total_srp_constraints = j["srp_stats"].value("constraints", 0LL);
    }
    if (j.contains("notes")) solution.notes = j["notes"].get<std::vector<std::string>>();
    return solution;
}

json validation_to_json(const ValidationReport& report) {
    auto check = [](const CheckResult& c) {
        json cj;
        cj["mark"] = mark_name(c.mark);
        if (!c.details.empty()) cj["details"] = c.details;
        return cj;
    };
    json j;
    j["r1"] = check(report.r1);
    j["r2"] = check(report.r2);
    j["r3"] = check(report.r3);
    j["p1"] = check(report.p1);
    j["p2"] = check(report.p2);
    j["p3"] = check(report.p3);
    j["cost"] = {{"distance", report.cost.distance},
                 {"rental", report.cost.rental},
                 {"total", report.cost.total}};
    return j;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path + " for reading");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out << content;
    if (!out) throw IoFailure("failed while writing " + path);
}

json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error("cannot parse " + origin + ": " + e.what());
    }
}

}  // namespace pdp
