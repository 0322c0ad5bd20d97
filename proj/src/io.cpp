#include "cakecut/io.hpp"

#include <json.hpp>
#include <stdexcept>

namespace cakecut {

using nlohmann::json;

namespace {

json scalar_json(const Scalar& s) {
  if (s.is_rational()) return s.to_string();
  return json{{"a", Scalar(s.rat_part()).to_string()},
              {"b", Scalar(s.rad_part()).to_string()},
              {"m", s.field_m()}};
}

Scalar scalar_from(const json& j) {
  if (j.is_string()) return Scalar(parse_rational(j.get<std::string>()));
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  if (j.is_object())
    return Scalar::quadratic(parse_rational(j.at("a").get<std::string>()),
                             parse_rational(j.at("b").get<std::string>()),
                             j.at("m").get<std::int64_t>());
  throw std::invalid_argument("scalar must be a string or an {a,b,m} object");
}

json measure_json(const Measure& m) {
  json cells = json::array();
  const auto& bk = m.breakpoints();
  const auto& dn = m.densities();
  for (std::size_t i = 0; i < dn.size(); ++i)
    cells.push_back({{"to", scalar_json(bk[i + 1])}, {"density", scalar_json(dn[i])}});
  return cells;
}

Measure measure_from(const json& cells, const Scalar& extent) {
  if (!cells.is_array() || cells.empty())
    throw std::invalid_argument("density must be a non-empty cell array");
  std::vector<Scalar> bks{Scalar(0)}, dens;
  for (const json& c : cells) {
    bks.push_back(scalar_from(c.at("to")));
    dens.push_back(scalar_from(c.at("density")));
  }
  if (bks.back() != extent)
    throw std::invalid_argument("density cells must end at the cake boundary");
  return Measure(bks, dens);
}

json piece_json(const Piece& p) {
  json out = json::array();
  for (const Interval& iv : p.intervals())
    out.push_back(json::array({scalar_json(iv.lo), scalar_json(iv.hi)}));
  return out;
}

Piece piece_from(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("piece must be an array of [lo,hi] pairs");
  std::vector<Interval> ivs;
  for (const json& e : j) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("piece entries must be [lo,hi] pairs");
    ivs.push_back({scalar_from(e[0]), scalar_from(e[1])});
  }
  return Piece::from_intervals(ivs);
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("instance is not valid JSON: ") + e.what());
  }
  try {
    Instance inst;
    const json& ck = j.at("cake");
    const std::string kind = ck.at("kind").get<std::string>();
    if (kind == "interval")
      inst.cake = Cake::interval(scalar_from(ck.at("length")));
    else if (kind == "rect")
      inst.cake = Cake::rect(scalar_from(ck.at("width")), scalar_from(ck.at("height")));
    else
      throw std::invalid_argument("unknown cake kind \"" + kind + "\"");

    if (j.contains("scalar")) {
      const json& sc = j.at("scalar");
      const std::string sk = sc.at("kind").get<std::string>();
      if (sk == "quad")
        inst.field_m = sc.at("m").get<std::int64_t>();
      else if (sk != "rational")
        throw std::invalid_argument("unknown scalar kind \"" + sk + "\"");
    }

    const json& players = j.at("players");
    if (!players.is_array() || players.empty())
      throw std::invalid_argument("players must be a non-empty array");
    for (const json& p : players) {
      inst.players.push_back({scalar_from(p.at("demand")), inst.players.size()});
      inst.measures.push_back(measure_from(p.at("density"), inst.cake.extent()));
    }

    const Scalar total = inst.total_demand();
    for (std::size_t i = 0; i < inst.n(); ++i)
      if (inst.measures[i].total() != total)
        throw std::invalid_argument(
            "player " + std::to_string(i) + ": measure totals " +
            inst.measures[i].total().to_string() + " but demands sum to " +
            total.to_string());
    inst.validate();
    return inst;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("instance schema error: ") + e.what());
  }
}

std::string serialize_instance(const Instance& inst) {
  json j;
  if (inst.cake.kind() == CakeKind::interval)
    j["cake"] = {{"kind", "interval"}, {"length", scalar_json(inst.cake.extent())}};
  else
    j["cake"] = {{"kind", "rect"},
                 {"width", scalar_json(inst.cake.extent())},
                 {"height", scalar_json(inst.cake.height())}};
  j["scalar"] = inst.field_m ? json{{"kind", "quad"}, {"m", inst.field_m}}
                             : json{{"kind", "rational"}};
  j["players"] = json::array();
  for (std::size_t i = 0; i < inst.n(); ++i)
    j["players"].push_back({{"demand", scalar_json(inst.players[i].demand)},
                            {"density", measure_json(inst.measure_of(i))}});
  return j.dump(2);
}

std::string serialize_division(const Instance& inst, const Division& div) {
  json out = json::array();
  for (std::size_t i = 0; i < div.pieces.size(); ++i) {
    json row = {{"player", i}, {"piece", piece_json(div.pieces[i])}};
    if (i < inst.n()) {
      row["value"] = scalar_json(measure_eval(inst.measure_of(i), div.pieces[i]));
      row["demand"] = scalar_json(inst.players[i].demand);
    }
    out.push_back(row);
  }
  return out.dump(2);
}

Division parse_division(const std::string& text, std::size_t n) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("division is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_array()) throw std::invalid_argument("division must be an array");
    Division div(n);
    std::vector<bool> seen(n, false);
    for (const json& row : j) {
      const std::size_t p = row.at("player").get<std::size_t>();
      if (p >= n) throw std::invalid_argument("division names a player outside the instance");
      if (seen[p]) throw std::invalid_argument("division lists a player twice");
      seen[p] = true;
      div.pieces[p] = piece_from(row.at("piece"));
    }
    for (std::size_t p = 0; p < n; ++p)
      if (!seen[p])
        throw std::invalid_argument("division misses player " + std::to_string(p));
    return div;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("division schema error: ") + e.what());
  }
}

std::string serialize_verify_report(const VerifyReport& rep) {
  json j;
  j["partition_ok"] = rep.partition_ok;
  j["proportional"] = rep.proportional;
  j["ok"] = rep.ok();
  j["players"] = json::array();
  for (const PlayerCheck& p : rep.players)
    j["players"].push_back({{"value", scalar_json(p.value)},
                            {"demand", scalar_json(p.demand)},
                            {"margin", scalar_json(p.margin)}});
  j["errors"] = rep.errors;
  return j.dump(2);
}

std::string serialize_experiment(const ExperimentReport& rep) {
  json j;
  j["n"] = rep.n;
  j["D"] = rep.D.str();
  j["c1"] = Scalar(rep.c1).to_string();
  j["c2"] = Scalar(rep.c2).to_string();
  j["seed"] = rep.seed;
  j["ok"] = rep.ok();
  j["humble_queries"] = rep.humble_queries;
  j["lower_bound"] = {{"coefficient", Scalar(rep.bound.coefficient).to_string()},
                      {"argument", Scalar(rep.bound.argument).to_string()},
                      {"log3_value", rep.bound.decimal}};
  j["batch_upper"] = rep.batch_upper;
  j["slack"] = rep.slack_decimal;
  j["players"] = json::array();
  for (const ExperimentPlayer& p : rep.players) {
    json row = {{"player", p.player},
                {"humble", p.humble},
                {"demand", scalar_json(p.demand)},
                {"queries", p.queries.highlevel_total()},
                {"witness_value", scalar_json(p.witness_value)}};
    if (p.humble) {
      row["committed_value"] = scalar_json(p.committed_value);
      row["volume_floor"] = Scalar(p.volume_floor).to_string();
    }
    row["piece"] = p.player < rep.division.pieces.size()
                       ? piece_json(rep.division.pieces[p.player])
                       : json::array();
    j["players"].push_back(row);
  }
  j["violations"] = rep.violations;
  j["witness_measures"] = json::array();
  for (const Measure& m : rep.witness.measures)
    j["witness_measures"].push_back(measure_json(m));
  return j.dump(2);
}

}  // namespace cakecut
