#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "genusforge/codes.hpp"
#include "genusforge/lattice.hpp"
#include "genusforge/modcat.hpp"
#include "genusforge/quadspace.hpp"

using namespace genusforge;
using io::json;

namespace {

enum class Status { ok = 0, validation_error = 1, limit_exceeded = 2 };

struct Globals {
  std::optional<std::int64_t> limit;
  int precision = 128;
  bool pretty = false;
};

json integer_json(const exact::Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

std::int64_t cap_or(const Globals& g, std::int64_t fallback) { return g.limit ? *g.limit : fallback; }

// A space file, the output of `lattice disc-form`, or a lattice file
// standing for its discriminant form.
quadspace::FiniteQuadraticSpace read_space(const std::string& path) {
  const json j = io::read_json_file(path);
  if (j.is_object() && j.contains("gram")) return lattice::discriminant_form(lattice::lattice_from_json(j));
  if (j.is_object() && j.contains("disc_form")) return quadspace::space_from_json(j["disc_form"], "/disc_form");
  return quadspace::space_from_json(j);
}

lattice::EvenLattice read_lattice(const std::string& path) { return lattice::lattice_from_json(io::read_json_file(path)); }

modcat::ModularData read_modular_data(const std::string& path) {
  return modcat::modular_data_from_json(io::read_json_file(path));
}

// Verlinde and genus-g dimensions presuppose the modular relations.
modcat::ModularData read_checked_modular_data(const std::string& path) {
  auto m = read_modular_data(path);
  const auto rep = modcat::verify_relations(m);
  if (!rep.all_passed()) throw ValidationError("modular relations fail: " + rep.first_failure());
  return m;
}

codes::BinaryCode read_code(const std::string& path) { return codes::code_from_json(io::read_json_file(path)); }

// Inline JSON if it starts with '[', otherwise a file holding the array.
json read_subgroup_spec(const std::string& spec) {
  if (!spec.empty() && spec.front() == '[') {
    try {
      return json::parse(spec);
    } catch (const json::parse_error& e) {
      throw ValidationError(std::string("malformed --subgroup JSON: ") + e.what());
    }
  }
  return io::read_json_file(spec);
}

json jordan_to_json(const quadspace::JordanDecomposition& d) {
  json odd = json::object();
  for (const auto& [p, blocks] : d.odd) {
    json bs = json::array();
    for (const auto& b : blocks) bs.push_back({{"p", b.p}, {"k", b.k}, {"theta", b.theta}});
    odd[std::to_string(p)] = bs;
  }
  json out{{"odd", odd}};
  out["two"] = d.two ? quadspace::space_to_json(*d.two) : json(nullptr);
  return out;
}

json roots_to_json(const lattice::RootSystemReport& r) {
  json comps = json::array();
  for (const auto& c : r.components) comps.push_back(c.to_string());
  return json{{"root_system", r.to_string()}, {"components", comps}, {"root_count", r.root_count}};
}

json profile_counts(const codes::SigmaProfile& p) {
  json a = json::array();
  for (const auto& c : p.counts) a.push_back(integer_json(c));
  return a;
}

// Carries a JSON payload alongside a limit error, for partial results.
struct PartialResult : LimitExceeded {
  json payload;
  PartialResult(const std::string& msg, json p) : LimitExceeded(msg), payload(std::move(p)) {}
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with lattice genera, finite quadratic spaces, modular data and framed codes."};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--limit", g.limit, "Override the enumeration cap of the command");
  app.add_option("--precision", g.precision, "Interval precision in bits")->check(CLI::Range(16, 1 << 16));
  app.add_flag("--pretty", g.pretty, "Indent the JSON output");

  json result;

  // lattice
  auto* lat = app.add_subcommand("lattice", "Even lattices")->require_subcommand(1);
  std::string f1, f2, name, subgroup_spec;
  int terms = 3;
  {
    auto* c = lat->add_subcommand("disc-form", "Discriminant form L*/L");
    c->add_option("file", f1)->required();
    c->callback([&] {
      const auto l = read_lattice(f1);
      const auto d = lattice::discriminant_form(l);
      const auto sig = lattice::signature(l);
      result = {{"order", d.order()},
                {"disc_form", quadspace::space_to_json(d)},
                {"signature", {sig.first, sig.second}},
                {"signature_mod8", quadspace::signature_mod8(d, g.precision)}};
    });
    c = lat->add_subcommand("genus-compare", "Decide whether two lattices share a genus");
    c->add_option("a", f1)->required();
    c->add_option("b", f2)->required();
    c->callback([&] {
      result = {{"same_genus", lattice::same_genus(read_lattice(f1), read_lattice(f2), cap_or(g, quadspace::kDefaultIsometryCap))}};
    });
    c = lat->add_subcommand("overlattices", "Even overlattices, one per isotropic subgroup");
    c->add_option("file", f1)->required();
    c->callback([&] {
      const auto l = read_lattice(f1);
      const auto disc = lattice::discriminant_form_with_lifts(l);
      json out = json::array();
      for (const auto& o : lattice::overlattices(l, cap_or(g, quadspace::kDefaultSubgroupCap)))
        out.push_back({{"subgroup", quadspace::subgroup_to_json(disc.space.group(), o.subgroup)},
                       {"index", o.subgroup.order()},
                       {"determinant", integer_json(exact::determinant(o.lattice.gram()))},
                       {"lattice", lattice::lattice_to_json(o.lattice)}});
      result = {{"count", out.size()}, {"overlattices", out}};
    });
    c = lat->add_subcommand("theta", "Theta series coefficients");
    c->add_option("file", f1)->required();
    c->add_option("--terms", terms, "Number of coefficients, q^0 .. q^(K-1)")->check(CLI::PositiveNumber);
    c->callback([&] {
      const auto th = lattice::theta_coefficients(read_lattice(f1), terms - 1,
                                                  static_cast<int>(cap_or(g, lattice::kDefaultThetaCap)));
      json a = json::array();
      for (const auto& x : th) a.push_back(integer_json(x));
      result = {{"theta", a}};
    });
    c = lat->add_subcommand("roots", "Root system of a positive definite lattice");
    c->add_option("file", f1)->required();
    c->callback([&] { result = roots_to_json(lattice::root_system(read_lattice(f1))); });
    c = lat->add_subcommand("builtin", "Emit a built-in lattice");
    c->add_option("name", name)->required();
    c->callback([&] { result = lattice::lattice_to_json(lattice::builtin(name)); });
  }

  // qs
  auto* qs = app.add_subcommand("qs", "Finite quadratic spaces")->require_subcommand(1);
  {
    auto* c = qs->add_subcommand("validate", "Check and normalize a space");
    c->add_option("file", f1)->required();
    c->callback([&] {
      const auto s = read_space(f1);
      result = {{"valid", true}, {"order", s.order()}, {"space", quadspace::space_to_json(s)}};
    });
    c = qs->add_subcommand("milgram", "Signature mod 8 from the Gauss sum");
    c->add_option("file", f1)->required();
    c->callback([&] { result = {{"signature_mod8", quadspace::signature_mod8(read_space(f1), g.precision)}}; });
    c = qs->add_subcommand("isotropic", "All isotropic subgroups");
    c->add_option("file", f1)->required();
    c->callback([&] {
      const auto s = read_space(f1);
      json out = json::array();
      for (const auto& sub : quadspace::isotropic_subgroups(s, cap_or(g, quadspace::kDefaultSubgroupCap)))
        out.push_back(quadspace::subgroup_to_json(s.group(), sub));
      result = {{"count", out.size()}, {"subgroups", out}};
    });
    c = qs->add_subcommand("quotient", "C-perp / C for an isotropic subgroup C");
    c->add_option("file", f1)->required();
    c->add_option("--subgroup", subgroup_spec, "JSON array of generator coordinate tuples, inline or as a file")->required();
    c->callback([&] {
      const auto s = read_space(f1);
      const auto sub = quadspace::subgroup_from_json(s.group(), read_subgroup_spec(subgroup_spec), "--subgroup");
      result = quadspace::space_to_json(quadspace::quotient_space(s, sub));
    });
    c = qs->add_subcommand("isometric", "Search for an isometry");
    c->add_option("a", f1)->required();
    c->add_option("b", f2)->required();
    c->callback([&] {
      const auto iso = quadspace::is_isometric(read_space(f1), read_space(f2), cap_or(g, quadspace::kDefaultIsometryCap));
      result = {{"isometric", iso.has_value()}};
      if (iso) result["images"] = *iso;
    });
    c = qs->add_subcommand("decompose", "Primary parts and odd Jordan blocks");
    c->add_option("file", f1)->required();
    c->callback([&] {
      const auto s = read_space(f1);
      json parts = json::object();
      for (const auto& [p, part] : quadspace::primary_decomposition(s)) parts[std::to_string(p)] = quadspace::space_to_json(part);
      result = {{"primary", parts}, {"jordan", jordan_to_json(quadspace::jordan_decomposition(s))}};
    });
  }

  // modcat
  auto* mc = app.add_subcommand("modcat", "Modular data")->require_subcommand(1);
  bool check = false;
  int genus = 0;
  std::vector<std::size_t> punctures;
  std::string central;
  {
    auto* c = mc->add_subcommand("from-qs", "Modular data of a finite quadratic space");
    c->add_option("file", f1)->required();
    c->add_flag("--check", check, "Also verify the relations");
    c->callback([&] {
      const auto m = modcat::from_quadratic_space(read_space(f1));
      result = modcat::modular_data_to_json(m);
      if (check) result["relations"] = modcat::relation_report_to_json(modcat::verify_relations(m));
    });
    c = mc->add_subcommand("verlinde", "Fusion rules by the Verlinde formula");
    c->add_option("file", f1)->required();
    c->callback([&] {
      const auto t = modcat::verlinde_fusion(read_checked_modular_data(f1));
      result = {{"fusion", modcat::fusion_to_json(t)}, {"associative", modcat::fusion_associative(t)}};
    });
    c = mc->add_subcommand("genus-dim", "Dimension of the genus-g space with punctures");
    c->add_option("file", f1)->required();
    c->add_option("--g", genus)->required()->check(CLI::NonNegativeNumber);
    c->add_option("--punctures", punctures, "Labels at the punctures");
    c->callback([&] { result = {{"dimension", integer_json(modcat::genus_dimension(read_checked_modular_data(f1), genus, punctures))}}; });
    c = mc->add_subcommand("milgram", "VOA Milgram check for a central charge");
    c->add_option("file", f1)->required();
    c->add_option("--c", central, "Central charge as a/b")->required();
    c->callback([&] {
      const auto m = read_modular_data(f1);
      result = {{"voa_milgram", modcat::voa_milgram_check(m, exact::Rational::parse(central), g.precision)}};
    });
    c = mc->add_subcommand("ising", "Built-in Ising modular data");
    c->callback([&] { result = modcat::modular_data_to_json(modcat::ising_data()); });
    c = mc->add_subcommand("extensions", "Simple-current extensions of a finite quadratic space");
    c->add_option("file", f1)->required();
    c->callback([&] {
      const auto s = read_space(f1);
      json out = json::array();
      for (const auto& r : modcat::simple_current_extensions(s, cap_or(g, quadspace::kDefaultSubgroupCap)))
        out.push_back({{"subgroup", quadspace::subgroup_to_json(s.group(), r.subgroup)},
                       {"quotient", quadspace::space_to_json(r.quotient)},
                       {"multiplicity", r.multiplicity},
                       {"exists_unique", r.exists_unique}});
      result = {{"count", out.size()}, {"extensions", out}};
    });
  }

  // codes
  auto* cd = app.add_subcommand("codes", "Binary codes")->require_subcommand(1);
  int length = 0, dim = 0, distance = 0;
  std::uint64_t budget = 0;
  bool self_dual = false;
  {
    auto sigma_opts = [&] {
      codes::SigmaOptions o;
      o.max_length = static_cast<int>(cap_or(g, codes::kDefaultSigmaCap));
      o.node_budget = budget;
      return o;
    };
    auto* c = cd->add_subcommand("sigma", "Count k-dimensional codes containing 1^r with weights in 8Z");
    c->add_option("--length", length)->required();
    c->add_option("--dim", dim)->required();
    c->add_option("--budget", budget, "Search node budget; partial counts are reported when it runs out");
    c->callback([&] {
      if (dim < 0 || dim > length) throw ValidationError("dimension must lie in [0, length]");
      const auto p = codes::sigma_profile(length, dim, sigma_opts());
      if (!p.complete)
        throw PartialResult("sigma search exceeded its node budget", {{"partial_counts", profile_counts(p)}, {"complete", false}});
      result = {{"sigma", integer_json(p.counts[static_cast<std::size_t>(dim)])}};
    });
    c = cd->add_subcommand("mass", "Relative mass sum with all sigma_k");
    c->add_option("--length", length)->required();
    c->add_option("--budget", budget, "Search node budget; partial counts are reported when it runs out");
    c->callback([&] {
      if (length < 16 || length % 16 != 0) throw ValidationError("invalid length " + std::to_string(length) + ": the mass formula needs 16 | r");
      const auto p = codes::sigma_profile(length, length, sigma_opts());
      if (!p.complete)
        throw PartialResult("sigma search exceeded its node budget", {{"partial_counts", profile_counts(p)}, {"complete", false}});
      result = {{"mass", codes::relative_mass(p).to_string()}, {"sigma", profile_counts(p)}};
    });
    c = cd->add_subcommand("lexicode", "Greedy lexicographic code");
    c->add_option("--length", length)->required();
    c->add_option("--distance", distance)->required();
    c->callback([&] {
      result = codes::code_to_json(codes::lexicode(length, distance,
                                                   static_cast<std::uint64_t>(cap_or(g, static_cast<std::int64_t>(codes::kDefaultLexicodeBallCap)))));
    });
    c = cd->add_subcommand("check-framed", "Framed VOA code conditions for (C, D)");
    c->add_option("c", f1)->required();
    c->add_option("d", f2)->required();
    c->add_flag("--self-dual", self_dual);
    c->callback([&] {
      result = codes::framed_report_to_json(codes::check_framed_conditions({read_code(f1), read_code(f2)}, self_dual));
    });
  }

  auto emit = [&](const json& j) { std::cout << (g.pretty ? j.dump(2) : j.dump()) << "\n"; };
  auto fail = [&](Status s, const std::string& msg, json extra = json::object()) {
    json j{{"status", s == Status::limit_exceeded ? "limit-exceeded" : "validation-error"}, {"error", msg}};
    j.update(extra);
    emit(j);
    std::cerr << "error: " << msg << "\n";
    return static_cast<int>(s);
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(Status::validation_error, e.what());
  } catch (const PartialResult& e) {
    return fail(Status::limit_exceeded, e.what(), e.payload);
  } catch (const LimitExceeded& e) {
    return fail(Status::limit_exceeded, e.what());
  } catch (const ValidationError& e) {
    return fail(Status::validation_error, e.what());
  } catch (const Error& e) {
    return fail(Status::validation_error, std::string("internal inconsistency: ") + e.what());
  } catch (const json::exception& e) {
    return fail(Status::validation_error, e.what());
  }
  emit(result);
  return 0;
}
