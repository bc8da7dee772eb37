#pragma once

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyparr/builtins.hpp"
#include "hyparr/json_io.hpp"

namespace hyparr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

struct Input {
  std::string bytes;
  Json json;
};

inline Input load(const std::string& path) {
  Input in;
  in.bytes = read_file(path);
  in.json = parse_json(in.bytes);
  return in;
}

inline Json report(const std::string& command, const std::string& digest, Json payload, Json certificates) {
  Json out;
  out["command"] = command;
  out["input_digest"] = digest;
  out["payload"] = std::move(payload);
  out["certificates"] = std::move(certificates);
  return out;
}

inline std::vector<Rational> parse_weights(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_rational(item));
  return out;
}

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("HYPARR_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "HYPARR_SEED must be an unsigned integer");
    }
  }
  return 1;
}

inline Json gap_summary(const ObstructionGap& g) {
  Json j;
  j["k"] = g.k;
  j["witness"] = g.witness.str();
  j["flat"] = index_list(g.flat);
  j["pi_k_nonzero"] = g.homotopy_claim();
  return j;
}

inline Json gap_certificate(const ObstructionGap& g) {
  Json j;
  j["k"] = g.k;
  j["witness"] = g.witness.str();
  j["flat"] = index_list(g.flat);
  j["dual"] = to_json(g.dual);
  Json upper = Json::array();
  for (const auto& u : g.upper) {
    Json e;
    e["flat"] = index_list(u.flat);
    e["witness"] = to_json(u.point);
    upper.push_back(std::move(e));
  }
  j["upper"] = std::move(upper);
  return j;
}

}  // namespace detail

/// Parses `args` (without the program name), runs one subcommand and writes
/// a JSON document to `out`. Returns 0, 1 (domain error, JSON error object on
/// `out`) or 2 (usage error, message on `err`).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact K(pi,1) obstructions and certificates for real hyperplane arrangements", "hyparr"};
  app.require_subcommand(1);

  std::string file, eps_text, start_text, weights_text, name;
  std::size_t limit = 22, k = 0, samples = 0, count = 0;
  unsigned jobs = 1;
  bool full_sets = false;
  std::optional<std::uint64_t> seed;
  std::size_t gen_n = 4, gen_l = 3, braid_m = 4;
  long bound = 9;

  auto add_file = [&](CLI::App* sub) { sub->add_option("file", file, "Arrangement JSON file")->required(); };
  auto add_enum = [&](CLI::App* sub) {
    sub->add_option("--limit", limit, "Largest n enumerated exhaustively")->capture_default_str();
    sub->add_option("--jobs", jobs, "Worker threads for enumeration")->capture_default_str();
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check that an arrangement is central, essential, repeat-free");
  add_file(validate_cmd);
  auto* lattice_cmd = app.add_subcommand("lattice", "Intersection lattice, Moebius values, chamber count");
  add_file(lattice_cmd);
  auto* chambers_cmd = app.add_subcommand("chambers", "Chambers with witnesses and walls");
  add_file(chambers_cmd);
  add_enum(chambers_cmd);
  auto* sigma_cmd = app.add_subcommand("sigma", "Sigma_k filtration");
  add_file(sigma_cmd);
  add_enum(sigma_cmd);
  sigma_cmd->add_option("--k", k, "Report only Sigma_k");
  sigma_cmd->add_flag("--full-sets", full_sets, "List the sign vectors of each Sigma_k");
  auto* obstruct_cmd = app.add_subcommand("obstruct", "Gaps of the Sigma filtration with certificates");
  add_file(obstruct_cmd);
  add_enum(obstruct_cmd);
  obstruct_cmd->add_option("--samples", samples, "Witness-search samples when n exceeds --limit");
  obstruct_cmd->add_option("--seed", seed, "Witness-search seed");
  auto* sink_cmd = app.add_subcommand("sink", "Sinks of a system of half-spaces and a flow to one");
  add_file(sink_cmd);
  add_enum(sink_cmd);
  sink_cmd->add_option("--eps", eps_text, "Sign vector, e.g. +++-")->required();
  sink_cmd->add_option("--start", start_text, "Start chamber of the flow");
  auto* certify_cmd = app.add_subcommand("certify", "Monodromy certificate of a nontrivial sphere");
  add_file(certify_cmd);
  certify_cmd->add_option("--eps", eps_text, "Sign vector")->required();
  certify_cmd->add_option("--weights", weights_text, "Comma-separated weights a1,...,an");
  certify_cmd->add_option("--start", start_text, "Start chamber of the flow");
  auto* sphere_cmd = app.add_subcommand("sphere", "Sample points of the sphere in the complexified complement");
  add_file(sphere_cmd);
  sphere_cmd->add_option("--eps", eps_text, "Sign vector")->required();
  sphere_cmd->add_option("--count", count, "Number of points")->required();
  sphere_cmd->add_option("--seed", seed, "Sampling seed");
  auto* builtin_cmd = app.add_subcommand("builtin", "Emit a catalog arrangement as JSON");
  builtin_cmd
      ->add_option("name", name, "boolean | generic4 | generic | x2 | x2-affine | braid | generic-union")
      ->required()
      ->check(CLI::IsMember({"boolean", "generic4", "generic", "x2", "x2-affine", "braid", "generic-union"}));
  builtin_cmd->add_option("--n", gen_n, "Number of hyperplanes (generic)");
  builtin_cmd->add_option("--l", gen_l, "Dimension (boolean, generic, generic-union)");
  builtin_cmd->add_option("--m", braid_m, "Braid arrangement on m letters");
  builtin_cmd->add_option("--seed", seed, "Seed of randomized constructions");
  builtin_cmd->add_option("--bound", bound, "Coefficient bound of randomized constructions");
  auto* cone_cmd = app.add_subcommand("cone", "Cone an affine arrangement");
  add_file(cone_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  const EnumerationOptions enum_opts{limit, jobs};

  try {
    Json result;
    if (command == "builtin") {
      const GenericitySeed gs{seed ? *seed : detail::default_seed(), bound};
      if (name == "boolean")
        result = to_json(boolean(gen_l));
      else if (name == "generic4")
        result = to_json(generic4());
      else if (name == "generic")
        result = to_json(generic(gen_n, gen_l, gs));
      else if (name == "x2")
        result = to_json(x2_coned());
      else if (name == "x2-affine")
        result = to_json(x2_affine());
      else if (name == "braid")
        result = to_json(braid(braid_m));
      else {
        std::vector<RatVector> sum{RatVector(gen_l, Rational(1))};
        auto u = generic_union(boolean(gen_l), make_arrangement(gen_l, sum, {"F"}), gs);
        result = to_json(u.arrangement);
        result["witness"] = u.witness.str();
      }
      out << result.dump(2) << "\n";
      return kExitOk;
    }

    const auto input = detail::load(file);
    const std::string digest = input_digest(input.bytes);
    if (command == "cone") {
      out << to_json(cone(affine_from_json(input.json))).dump(2) << "\n";
      return kExitOk;
    }

    const Arrangement a = validate(arrangement_from_json(input.json));
    Json payload, certs = Json::object();

    if (command == "validate") {
      payload["dim"] = a.dim;
      payload["n"] = a.size();
      payload["central"] = true;
      payload["essential"] = true;
    } else if (command == "lattice") {
      const Lattice lat = build_lattice(a);
      Json flats = Json::array();
      for (std::size_t i = 0; i < lat.flats().size(); ++i) {
        Json f;
        f["contains"] = index_list(lat.flats()[i].contains);
        f["codim"] = lat.flats()[i].codim;
        f["mu"] = lat.moebius()[i];
        flats.push_back(std::move(f));
      }
      payload["flats"] = std::move(flats);
      payload["codim_counts"] = lat.codim_counts();
      payload["characteristic_polynomial"] = lat.characteristic_polynomial();
      payload["chamber_count"] = chamber_count_oracle(lat);
    } else if (command == "chambers") {
      const auto chambers = enumerate_chambers(a, enum_opts);
      Json list = Json::array(), witnesses = Json::array();
      for (const auto& c : chambers) {
        Json e;
        e["signs"] = c.signs.str();
        e["walls"] = index_list(c.walls);
        list.push_back(std::move(e));
        Json w;
        w["signs"] = c.signs.str();
        w["witness"] = to_json(c.witness);
        witnesses.push_back(std::move(w));
      }
      payload["count"] = chambers.size();
      payload["chamber_count_oracle"] = chamber_count_oracle(build_lattice(a));
      payload["chambers"] = std::move(list);
      certs["chambers"] = std::move(witnesses);
    } else if (command == "sigma") {
      const Lattice lat = build_lattice(a);
      if (k != 0) {
        const auto set = sigma(lat, k, enum_opts);
        payload["k"] = k;
        payload["count"] = set.size();
        if (full_sets) {
          Json s = Json::array();
          for (const auto& e : set) s.push_back(e.str());
          payload["set"] = std::move(s);
        }
      } else {
        const auto f = sigma_filtration(lat, enum_opts);
        payload["counts"] = f.counts;
        if (full_sets) {
          Json sets = Json::array();
          for (std::size_t i = 0; i < f.sets.size(); ++i) {
            if (i == 0 && f.sets[0].empty()) {
              sets.push_back(nullptr);
              continue;
            }
            Json s = Json::array();
            for (const auto& e : f.sets[i]) s.push_back(e.str());
            sets.push_back(std::move(s));
          }
          payload["sets"] = std::move(sets);
        }
        Json gaps = Json::array(), gap_certs = Json::array();
        for (const auto& g : f.gaps) {
          Json s;
          s["k"] = g.k;
          s["witness"] = g.witness.str();
          s["flat"] = index_list(g.flat);
          gaps.push_back(s);
          s["dual"] = to_json(g.dual);
          gap_certs.push_back(std::move(s));
        }
        payload["gaps"] = std::move(gaps);
        certs["gaps"] = std::move(gap_certs);
      }
    } else if (command == "obstruct") {
      const Lattice lat = build_lattice(a);
      ObstructionOptions opts{enum_opts, samples, seed ? *seed : detail::default_seed()};
      const auto r = detect_obstruction(lat, opts);
      payload["exhaustive"] = r.exhaustive;
      if (r.exhaustive) payload["counts"] = r.counts;
      Json gaps = Json::array(), gap_certs = Json::array();
      for (const auto& g : r.gaps) {
        gaps.push_back(detail::gap_summary(g));
        gap_certs.push_back(detail::gap_certificate(g));
      }
      payload["gaps"] = std::move(gaps);
      payload["minimal_k"] = r.minimal_k ? Json(*r.minimal_k) : Json(nullptr);
      payload["kpi1_possible"] = r.kpi1_possible;
      certs["gaps"] = std::move(gap_certs);
    } else if (command == "sink") {
      const SignVector eps = SignVector::parse(eps_text);
      check_signs(a, eps);
      const auto global = is_globally_consistent(a, eps);
      const auto sinks = all_sinks(a, eps, enum_opts);
      const Chamber start = start_text.empty() ? first_chamber(a) : require_chamber(a, SignVector::parse(start_text));
      const auto path = flow_to_sink(a, eps, start);
      payload["eps"] = eps.str();
      payload["globally_consistent"] = global.consistent;
      Json sink_list = Json::array(), sink_certs = Json::array();
      for (const auto& c : sinks) {
        sink_list.push_back(c.signs.str());
        sink_certs.push_back(to_json(c));
      }
      payload["sinks"] = std::move(sink_list);
      payload["flow"] = to_json(path);
      certs["global"] = to_json(global.certificate);
      certs["sinks"] = std::move(sink_certs);
      Json flow_certs = Json::array();
      for (const auto& c : path.chambers) flow_certs.push_back(to_json(c));
      certs["flow"] = std::move(flow_certs);
    } else if (command == "certify") {
      const Lattice lat = build_lattice(a);
      const SignVector eps = SignVector::parse(eps_text);
      std::optional<SignVector> start;
      if (!start_text.empty()) start = SignVector::parse(start_text);
      const auto c = weights_text.empty() ? certify_nontrivial_sphere(lat, eps, start)
                                          : custom_weights(lat, eps, detail::parse_weights(weights_text), start);
      payload["eps"] = eps.str();
      payload["sink"] = c.sink.signs.str();
      payload["separating"] = index_list(c.separating);
      payload["weights"] = to_json(RatVector(c.weights));
      payload["weight_sum"] = to_string(c.weight_sum);
      payload["rotation"] = to_string(c.rotation);
      payload["intersection_number"] = "1 - exp(2*pi*i*" + to_string(c.rotation) + ")";
      payload["nonzero"] = true;
      certs["global_inconsistency"] = to_json(is_globally_consistent(a, eps).certificate);
      certs["sink"] = to_json(c.sink);
      certs["flow"] = to_json(c.flow);
    } else if (command == "sphere") {
      const Lattice lat = build_lattice(a);
      const SignVector eps = SignVector::parse(eps_text);
      const auto points = sample_sphere_points(lat, eps, count, seed ? *seed : detail::default_seed());
      std::size_t verified = 0;
      Json list = Json::array();
      for (const auto& p : points) {
        if (verify_sample_point(a, eps, p)) ++verified;
        list.push_back(to_json(p));
      }
      payload["eps"] = eps.str();
      payload["count"] = points.size();
      payload["verified"] = verified;
      certs["points"] = std::move(list);
    }
    out << detail::report(command, digest, std::move(payload), std::move(certs)).dump(2) << "\n";
    return kExitOk;
  } catch (const Error& e) {
    Json j;
    j["command"] = command;
    j["error"]["kind"] = std::string(e.name());
    j["error"]["message"] = e.what();
    out << j.dump(2) << "\n";
    return kExitDomain;
  }
}

}  // namespace hyparr::cli
