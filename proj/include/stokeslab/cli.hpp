#pragma once

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stokeslab/decomp.hpp"
#include "stokeslab/generator.hpp"
#include "stokeslab/io.hpp"
#include "stokeslab/selftest.hpp"

namespace stokeslab::cli {

namespace detail {

inline GaussianRational parse_point_arg(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw ParseError("point must be re,im: " + s);
  return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
}

inline nlohmann::json subspace_json(const Subspace& s) {
  return nlohmann::json{{"ambient", s.ambient()}, {"dim", s.dim()}, {"basis", io::matrix_json(s.basis())}};
}

inline Presentation read_presentation(std::istream& in) {
  Document doc = read_document(in);
  if (doc.kind != "presentation") throw ParseError("expected a presentation document");
  return doc.presentation;
}

inline void emit(std::ostream& out, bool quiet, const Document& doc, const std::string& verdict) {
  if (quiet)
    out << verdict << "\n";
  else
    out << serialize(doc);
}

inline Document report_doc(nlohmann::json payload) {
  Document d;
  d.kind = "report";
  d.report = std::move(payload);
  return d;
}

}  // namespace detail

/// Command-line front end; returns the process exit code.
/// 0: success / Agree / pass.  1: mathematical disagreement or failed
/// invariant.  2: unusable input (parse errors, invalid documents, bad args).
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"exact Stokes-structure and constructible-sheaf calculator"};
  app.require_subcommand(1);
  app.fallthrough();
  bool quiet = false;
  app.add_flag("--quiet,-q", quiet, "print only the verdict");

  std::string theta_s, xi_s, cut_s, base_s;
  std::vector<std::string> theta_list;
  std::uint64_t seed = 1;
  std::size_t gen_n = 2, gen_maxdim = 1, instances = 500;
  long gen_bound = 3;

  CLI::App* c_validate = app.add_subcommand("validate", "check a presentation document");
  CLI::App* c_monodromy = app.add_subcommand("monodromy", "total monodromy of a presentation");
  CLI::App* c_cohomology = app.add_subcommand("cohomology", "circle cohomology of the filtration at xi");
  c_cohomology->add_option("--xi", xi_s, "point re,im (rationals)")->required();
  CLI::App* c_laplace = app.add_subcommand("laplace", "extract Stokes data along theta");
  c_laplace->add_option("--theta", theta_s, "direction x/y")->required();
  CLI::App* c_inverse = app.add_subcommand("inverse-laplace", "realize a presentation from Stokes data");
  c_inverse->add_option("--cut", cut_s, "cut direction x/y (default: adapted to theta)");
  c_inverse->add_option("--base", base_s, "base direction x/y (default: theta)");
  CLI::App* c_decompose = app.add_subcommand("decompose", "Stokes decomposition along theta");
  c_decompose->add_option("--theta", theta_s, "direction x/y")->required();
  CLI::App* c_compare = app.add_subcommand("compare", "compare the two decompositions along theta");
  c_compare->add_option("--theta", theta_s, "direction x/y")->required();
  CLI::App* c_roundtrip = app.add_subcommand("roundtrip", "extract/realize round trip");
  c_roundtrip->add_option("--theta", theta_list, "directions x/y (default: 8 sampled)");
  CLI::App* c_generate = app.add_subcommand("generate", "seeded random presentation");
  c_generate->add_option("--seed", seed, "64-bit seed");
  c_generate->add_option("--n", gen_n, "number of singularities (1..6)");
  c_generate->add_option("--maxdim", gen_maxdim, "block dimension bound (1..4)");
  c_generate->add_option("--bound", gen_bound, "coordinate bound");
  CLI::App* c_selftest = app.add_subcommand("selftest", "run the full invariant suite");
  c_selftest->add_option("--instances", instances, "fleet size (default 500)");

  std::vector<const char*> argv;
  argv.push_back("stokeslab");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(c_validate)) {
      Presentation p = detail::read_presentation(in);
      auto issues = validate(p);
      nlohmann::json names = nlohmann::json::array();
      for (auto v : issues) names.push_back(to_string(v));
      detail::emit(out, quiet, detail::report_doc({{"subject", "validate"}, {"issues", names}}),
                   issues.empty() ? "ok" : "invalid");
      return issues.empty() ? 0 : 2;
    }

    if (app.got_subcommand(c_monodromy)) {
      Presentation p = detail::read_presentation(in);
      if (!validate(p).empty()) throw ParseError("presentation does not validate");
      MatQ m = total_monodromy(p);
      detail::emit(out, quiet,
                   detail::report_doc({{"subject", "monodromy"}, {"matrix", io::matrix_json(m)}}),
                   "ok");
      return 0;
    }

    if (app.got_subcommand(c_cohomology)) {
      Presentation p = detail::read_presentation(in);
      if (!validate(p).empty()) throw ParseError("presentation does not validate");
      GaussianRational xi = detail::parse_point_arg(xi_s);
      FarFrame f = make_far_frame(p);
      CircleCohomology h = circle_cohomology(p, f, xi);
      bool ok = h.h0_dim() == 0 && h.h1_dim() == stalk(p, xi).dim();
      detail::emit(out, quiet,
                   detail::report_doc({{"subject", "cohomology"},
                                       {"h0_dim", h.h0_dim()},
                                       {"h1_dim", h.h1_dim()},
                                       {"stalk_dim", stalk(p, xi).dim()}}),
                   ok ? "ok" : "invariant-violated");
      return ok ? 0 : 1;
    }

    if (app.got_subcommand(c_laplace)) {
      Presentation p = detail::read_presentation(in);
      if (!validate(p).empty()) throw ParseError("presentation does not validate");
      Direction theta = io::parse_direction(theta_s);
      if (is_stokes_direction(theta, p.cfg) || is_anti_stokes_direction(theta, p.cfg))
        throw ParseError("theta must avoid Stokes and anti-Stokes directions");
      Document doc;
      doc.kind = "stokes_data";
      doc.stokes = extract_stokes_data(p, theta);
      detail::emit(out, quiet, doc, "ok");
      return 0;
    }

    if (app.got_subcommand(c_inverse)) {
      Document docin = read_document(in);
      if (docin.kind != "stokes_data") throw ParseError("expected a stokes_data document");
      if (!validate_stokes_data(docin.stokes).empty()) throw ParseError("stokes data does not validate");
      Direction cut = cut_s.empty() ? canonical_cut_for(docin.stokes.theta) : io::parse_direction(cut_s);
      Direction base = base_s.empty() ? docin.stokes.theta : io::parse_direction(base_s);
      Document doc;
      doc.kind = "presentation";
      doc.presentation = realize_presentation(docin.stokes, cut, base);
      if (!validate(doc.presentation).empty())
        throw ParseError("realized presentation does not validate (bad cut/base directions?)");
      detail::emit(out, quiet, doc, "ok");
      return 0;
    }

    if (app.got_subcommand(c_decompose)) {
      Presentation p = detail::read_presentation(in);
      if (!validate(p).empty()) throw ParseError("presentation does not validate");
      Direction theta = io::parse_direction(theta_s);
      if (is_stokes_direction(theta, p.cfg) || is_anti_stokes_direction(theta, p.cfg))
        throw ParseError("theta must avoid Stokes and anti-Stokes directions");
      FarFrame f = make_far_frame(p);
      Decomposition d = stokes_decomposition(p, f, theta);
      nlohmann::json comps = nlohmann::json::array();
      for (const auto& c : d.components) comps.push_back(detail::subspace_json(c));
      detail::emit(out, quiet,
                   detail::report_doc({{"subject", "decompose"}, {"components", comps}}), "ok");
      return 0;
    }

    if (app.got_subcommand(c_compare)) {
      Presentation p = detail::read_presentation(in);
      if (!validate(p).empty()) throw ParseError("presentation does not validate");
      Direction theta = io::parse_direction(theta_s);
      if (is_stokes_direction(theta, p.cfg) || is_anti_stokes_direction(theta, p.cfg))
        throw ParseError("theta must avoid Stokes and anti-Stokes directions");
      FarFrame f = make_far_frame(p);
      ComparisonReport r = compare_decompositions(p, f, theta);
      detail::emit(out, quiet,
                   detail::report_doc({{"subject", "compare"},
                                       {"verdict", r.agree ? "Agree" : "Disagree"},
                                       {"mismatched", r.mismatched}}),
                   r.agree ? "Agree" : "Disagree");
      return r.agree ? 0 : 1;
    }

    if (app.got_subcommand(c_roundtrip)) {
      Presentation p = detail::read_presentation(in);
      if (!validate(p).empty()) throw ParseError("presentation does not validate");
      FarFrame f = make_far_frame(p);
      std::vector<Direction> dirs;
      if (theta_list.empty()) {
        dirs = stokeslab::detail::sample_directions(p.cfg, 8);
      } else {
        for (const auto& s : theta_list) {
          Direction d = io::parse_direction(s);
          if (is_stokes_direction(d, p.cfg) || is_anti_stokes_direction(d, p.cfg))
            throw ParseError("theta must avoid Stokes and anti-Stokes directions");
          dirs.push_back(d);
        }
      }
      bool ok = true;
      nlohmann::json results = nlohmann::json::array();
      for (const Direction& theta : dirs) {
        StokesData d = extract_stokes_data(p, f, theta);
        Presentation r = realize_presentation(d);
        StokesData d2 = extract_stokes_data(r, theta);
        Presentation r2 = realize_presentation(d2);
        bool pass = stokeslab::detail::stokes_data_equal(d, d2);
        for (std::size_t i = 0; i < r.count() && pass; ++i)
          for (std::size_t j = 0; j < r.count() && pass; ++j)
            if (r2.maps[i][j] != r.maps[i][j]) pass = false;
        ok = ok && pass;
        results.push_back({{"theta", io::direction_str(theta)}, {"pass", pass}});
      }
      detail::emit(out, quiet,
                   detail::report_doc({{"subject", "roundtrip"},
                                       {"verdict", ok ? "pass" : "fail"},
                                       {"directions", results}}),
                   ok ? "pass" : "fail");
      return ok ? 0 : 1;
    }

    if (app.got_subcommand(c_generate)) {
      if (const char* env = std::getenv("STOKESLAB_SEED")) {
        try {
          seed = std::stoull(env);
        } catch (const std::exception&) {
          throw ParseError("STOKESLAB_SEED must be an integer");
        }
      }
      GeneratorSpec spec{seed, gen_n, gen_maxdim, gen_bound};
      Document doc;
      doc.kind = "presentation";
      doc.presentation = gen_random(spec);
      detail::emit(out, quiet, doc, "ok");
      return 0;
    }

    if (app.got_subcommand(c_selftest)) {
      SelftestReport rep = run_selftest(instances, quiet ? nullptr : &err);
      if (quiet) {
        out << (rep.all_pass() ? "pass" : "fail") << "\n";
        return rep.all_pass() ? 0 : 1;
      }
      return print_report(rep, out);
    }
  } catch (const ParseError& e) {
    if (!quiet)
      out << serialize(detail::report_doc({{"subject", "error"}, {"error", e.what()}}));
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    if (!quiet)
      out << serialize(detail::report_doc({{"subject", "error"}, {"error", e.what()}}));
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace stokeslab::cli
