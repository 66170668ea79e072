#pragma once

#include <chrono>
#include <optional>
#include <string>

#include <json.hpp>

#include "fixpoint.hpp"

namespace bpolsep {

/// Machine-readable decision record.
struct DecisionRecord {
  std::string verdict;  // "separable" | "inseparable" | "undecided"
  std::string cls;
  std::optional<Quad> witness;
  std::size_t iterations = 0;
  std::uint64_t oracle_calls = 0;
  std::size_t controlled_size = 0;
  std::size_t full_size = 0;
  double wall_ms = 0;

  static DecisionRecord from_verdict(const Verdict& v, ClassSpec cls) {
    DecisionRecord r;
    r.verdict = v.separable() ? "separable" : "inseparable";
    r.cls = cls.name();
    r.witness = v.witness;
    r.iterations = v.trace.rounds();
    r.oracle_calls = v.trace.oracle_calls;
    r.controlled_size = v.controlled_size;
    r.full_size = v.full_size;
    r.wall_ms = std::chrono::duration<double, std::milli>(v.trace.wall_time).count();
    return r;
  }

  static DecisionRecord undecided(ClassSpec cls) {
    DecisionRecord r;
    r.verdict = "undecided";
    r.cls = cls.name();
    return r;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["verdict"] = verdict;
    j["class"] = cls;
    j["witness"] = witness ? nlohmann::json(*witness) : nlohmann::json(nullptr);
    j["iterations"] = iterations;
    j["oracle_calls"] = oracle_calls;
    j["controlled_size"] = controlled_size;
    j["full_size"] = full_size;
    j["wall_ms"] = wall_ms;
    return j;
  }

  static DecisionRecord from_json(const nlohmann::json& j) {
    DecisionRecord r;
    r.verdict = j.at("verdict").get<std::string>();
    r.cls = j.at("class").get<std::string>();
    if (!j.at("witness").is_null()) r.witness = j.at("witness").get<Quad>();
    r.iterations = j.at("iterations").get<std::size_t>();
    r.oracle_calls = j.at("oracle_calls").get<std::uint64_t>();
    r.controlled_size = j.at("controlled_size").get<std::size_t>();
    r.full_size = j.at("full_size").get<std::size_t>();
    r.wall_ms = j.at("wall_ms").get<double>();
    return r;
  }

  bool operator==(const DecisionRecord&) const = default;
};

inline std::string format_quads(const QuadSet& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](const Quad& x) {
    out += first ? "" : ", ";
    first = false;
    out += "(" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," + std::to_string(x[2]) + "," +
           std::to_string(x[3]) + ")";
  });
  return out + "}";
}

}  // namespace bpolsep
