// Copyright 2026 The Chaoscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chaoscope/c_function.h"
#include "chaoscope/certificates.h"
#include "chaoscope/decomposition.h"
#include "chaoscope/dynamics.h"
#include "chaoscope/errors.h"
#include "chaoscope/game.h"
#include "chaoscope/game_io.h"
#include "chaoscope/volume.h"
#include "report.h"

namespace chaoscope::tools {
namespace {

// Shared flag values; each subcommand reads the ones it registered.
struct Options {
  std::string game_path;
  std::string out_path;
  std::string summary_path;
  std::string points;
  std::string point;
  std::string start = "uniform";
  std::string potential;
  std::string criterion;
  std::string algorithm = "mwu";
  std::string rule = "mwu";
  std::string regularizer;
  double delta = 0.0;
  double epsilon = 0.01;
  double radius = 1e-6;
  double fd_step = kDefaultFdStep;
  double tol = 1e-9;
  int steps = 0;
  int ensemble = 64;
  std::int64_t samples = 10000;
  std::uint64_t seed = 1;
};

// Inline JSON, a keyword, or a path to a file holding either.
std::string InlineOrFile(const std::string& arg) {
  std::error_code ec;
  if (!arg.empty() && std::filesystem::is_regular_file(arg, ec)) {
    return ReadTextFile(arg);
  }
  return arg;
}

BimatrixGame AsBimatrix(const Game& game, const std::string& purpose) {
  if (const auto* g = std::get_if<BimatrixGame>(&game)) return *g;
  if (const auto* g = std::get_if<GraphicalGame>(&game)) {
    if (g->num_players() == 2) {
      return BimatrixGame(g->Edge(0, 1), g->Edge(1, 0).transpose());
    }
  }
  if (const auto* g = std::get_if<NormalFormGame>(&game)) {
    if (g->num_players() == 2) {
      const auto& c = g->strategy_counts();
      using RowMajor =
          Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
      return BimatrixGame(
          Eigen::Map<const RowMajor>(g->payoffs(0).values().data(), c[0], c[1]),
          Eigen::Map<const RowMajor>(g->payoffs(1).values().data(), c[0],
                                     c[1]));
    }
  }
  throw InvalidArgument("game: " + purpose + " needs a two-player game");
}

GraphicalGame AsGraphical(const Game& game, const std::string& purpose) {
  if (const auto* g = std::get_if<GraphicalGame>(&game)) return *g;
  if (const auto* g = std::get_if<BimatrixGame>(&game)) {
    GraphicalGame h({g->rows(), g->cols()});
    h.SetEdge(0, 1, g->A());
    h.SetEdge(1, 0, g->B().transpose());
    return h;
  }
  throw InvalidArgument("game: " + purpose + " needs a graphical game");
}

double ScaledTol(const Options& o, const Game& game) {
  return o.tol * std::max(1.0, MaxAbsPayoff(game));
}

Algorithm CertAlgorithm(const std::string& name) {
  const Algorithm a = ParseAlgorithm(name);
  if (a != Algorithm::kMwu && a != Algorithm::kOmwu) {
    throw InvalidArgument("algorithm: expected mwu or omwu");
  }
  return a;
}

UpdateRule MakeRule(const Options& o) {
  UpdateRule rule;
  rule.algorithm = ParseAlgorithm(o.rule);
  rule.epsilon = o.epsilon;
  if (!o.regularizer.empty()) {
    rule.regularizer = ParseRegularizer(o.regularizer);
  } else if (rule.algorithm == Algorithm::kFtrl) {
    rule.regularizer = Regularizer::kEntropic;
  }
  rule.Validate();
  return rule;
}

std::optional<RegionSpec> OptionalRegion(const Options& o,
                                         const std::vector<int>& counts) {
  if (o.delta == 0.0) return std::nullopt;
  RegionSpec region{o.delta};
  region.Validate(counts);
  return region;
}

DualPoint StartPoint(const Options& o, const Game& game) {
  DualPoint p = ParseDualPoint(InlineOrFile(o.start), StrategyCounts(game));
  CheckShape(game, p);
  return p;
}

std::vector<std::string> CoordinateHeader(const std::vector<int>& counts) {
  std::vector<std::string> header;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (int j = 0; j < counts[i]; ++j) {
      header.push_back("p" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  return header;
}

// The sign of C that drives expansion for a rule.
Algorithm SignAlgorithm(Algorithm a) {
  return (a == Algorithm::kOmwu || a == Algorithm::kOmwuSurrogate)
             ? Algorithm::kOmwu
             : Algorithm::kMwu;
}

// ----------------------------------------------------------- subcommands

void RunDecompose(const Options& o, std::ostream& out) {
  const BimatrixGame game = AsBimatrix(LoadGameFile(o.game_path), "decompose");
  const Decomposition dec = Decompose(game);
  Json doc;
  doc["Z"] = MatrixToJson(dec.zero_sum);
  doc["C"] = MatrixToJson(dec.coordination);
  doc["r_Z"] = ChebyshevTrivialFit(dec.zero_sum).r;
  doc["r_C"] = ChebyshevTrivialFit(dec.coordination).r;
  const DominationReport dom = CheckDomination(dec.zero_sum, dec.coordination);
  doc["Z_dominates_C"] = dom.dominates;
  doc["theta_margin"] = dom.theta_margin;
  EmitText(DumpJson(doc), o.out_path, out);
}

void RunCfun(const Options& o, std::ostream& out) {
  const Game game = LoadGameFile(o.game_path);
  const std::vector<DualPoint> points =
      ParseDualPoints(InlineOrFile(o.points), StrategyCounts(game));
  CsvWriter csv({"point_index", "C_value"});
  for (std::size_t t = 0; t < points.size(); ++t) {
    csv.AddRow({std::to_string(t), FormatDouble(CValue(game, points[t]))});
  }
  EmitText(csv.str(), o.out_path, out);
}

void RunCertify(const Options& o, std::ostream& out) {
  const Game game = LoadGameFile(o.game_path);
  const Algorithm algorithm = CertAlgorithm(o.algorithm);
  const RegionSpec region{o.delta};
  region.Validate(StrategyCounts(game));
  std::optional<ChaosCertificate> cert;
  if (o.criterion == "domination") {
    cert = CertifyDomination(AsBimatrix(game, "domination"), region, o.epsilon,
                             algorithm);
  } else if (o.criterion == "lp") {
    cert = CertifyLp(AsBimatrix(game, "lp"), region, o.epsilon, algorithm);
  } else if (o.criterion == "graphical") {
    cert = CertifyGraphicalFamily(AsGraphical(game, "graphical"), region,
                                  o.epsilon, algorithm);
  } else if (o.criterion == "potential") {
    if (algorithm != Algorithm::kOmwu) {
      throw InvalidArgument(
          "algorithm: potential certificates are issued for omwu");
    }
    const double tol = ScaledTol(o, game);
    if (const auto* h = std::get_if<GraphicalGame>(&game)) {
      cert = CertifyGraphicalPotentialNegativity(*h, region, o.epsilon, tol);
    } else {
      const NormalFormGame nf = ToNormalForm(game);
      std::optional<Tensor> p;
      if (!o.potential.empty()) {
        p = ParseTensor(InlineOrFile(o.potential), nf.strategy_counts());
      } else {
        p = ExtractPotential(nf, tol);
        if (!p) throw InvalidArgument("game: not an exact potential game");
      }
      cert = CertifyPotentialNegativity(nf, *p, region, o.epsilon, tol);
    }
  } else {
    throw InvalidArgument("criterion: unknown value '" + o.criterion + "'");
  }

  Json doc;
  if (cert) {
    doc = CertificateToJson(*cert);
  } else {
    const CbarSampleResult sample =
        CbarSample(game, region, algorithm, o.samples, o.seed);
    doc["certified"] = false;
    doc["criterion"] = o.criterion;
    doc["algorithm"] = AlgorithmName(algorithm);
    doc["region_delta"] = o.delta;
    doc["sampled_min"] = sample.min_value;
    doc["samples"] = sample.num_points;
  }
  EmitText(DumpJson(doc), o.out_path, out);
}

void RunSimulate(const Options& o, std::ostream& out) {
  const Game game = LoadGameFile(o.game_path);
  const UpdateRule rule = MakeRule(o);
  const std::vector<int> counts = StrategyCounts(game);
  const std::optional<RegionSpec> region = OptionalRegion(o, counts);
  const DualPoint start = StartPoint(o, game);
  std::vector<std::string> header = {"t"};
  for (auto& h : CoordinateHeader(counts)) header.push_back(h);
  if (region) header.push_back("in_region");
  CsvWriter csv(header);
  const DualMap map(game, rule);
  IterateFlat(map, start.Flatten(), o.steps, [&](int t, const Vector& p) {
    std::vector<std::string> row = {std::to_string(t)};
    for (Eigen::Index a = 0; a < p.size(); ++a) {
      row.push_back(FormatDouble(p[a]));
    }
    if (region) row.push_back(map.InRegion(p, region->delta) ? "1" : "0");
    csv.AddRow(row);
    return true;
  });
  EmitText(csv.str(), o.out_path, out);
}

void RunVolume(const Options& o, std::ostream& out) {
  const Game game = LoadGameFile(o.game_path);
  const UpdateRule rule = MakeRule(o);
  const std::optional<RegionSpec> region =
      OptionalRegion(o, StrategyCounts(game));
  const VolumeLedger ledger = AccumulateLogVolume(
      game, StartPoint(o, game), rule, o.steps, region, 0, 0.0, o.fd_step);
  CsvWriter csv({"t", "log_det", "cumulative", "region_valid"});
  for (const auto& e : ledger.entries) {
    csv.AddRow({std::to_string(e.t), FormatDouble(e.log_det),
                FormatDouble(e.cumulative), e.region_valid ? "1" : "0"});
  }
  EmitText(csv.str(), o.out_path, out);

  Json summary;
  summary["steps"] = o.steps;
  summary["algorithm"] = AlgorithmName(rule.algorithm);
  summary["epsilon"] = rule.epsilon;
  summary["exit_time"] = ledger.exit_time ? Json(*ledger.exit_time) : Json();
  const auto& last = ledger.entries.back();
  summary["final_cumulative"] = last.cumulative + last.log_det;
  if (!o.summary_path.empty()) {
    EmitText(DumpJson(summary), o.summary_path, out);
  } else if (!o.out_path.empty()) {
    out << DumpJson(summary);
  }
}

void RunLyapunov(const Options& o, std::ostream& out) {
  const Game game = LoadGameFile(o.game_path);
  const UpdateRule rule = MakeRule(o);
  const RegionSpec region{o.delta};
  region.Validate(StrategyCounts(game));
  const CbarSampleResult cbar = CbarSample(
      game, region, SignAlgorithm(rule.algorithm), o.samples, o.seed);
  const DivergenceReport report =
      EnsembleDivergence(game, StartPoint(o, game), rule, o.steps, region,
                         o.radius, o.ensemble, o.seed, cbar.min_value);
  CsvWriter csv({"t", "sup_distance"});
  for (std::size_t t = 0; t < report.sup_distance.size(); ++t) {
    csv.AddRow({std::to_string(t), FormatDouble(report.sup_distance[t])});
  }
  EmitText(csv.str(), o.out_path, out);

  Json summary;
  summary["algorithm"] = AlgorithmName(rule.algorithm);
  summary["epsilon"] = rule.epsilon;
  summary["region_delta"] = region.delta;
  summary["ball_radius"] = o.radius;
  summary["ensemble_size"] = o.ensemble;
  summary["seed"] = o.seed;
  summary["first_exit"] =
      report.first_exit ? Json(*report.first_exit) : Json();
  summary["window_begin"] = report.window_begin;
  summary["window_end"] = report.window_end;
  summary["fitted_gamma"] = report.fitted_gamma;
  summary["predicted_gamma"] = report.predicted_gamma;
  summary["lambda_intercept"] = report.lambda_intercept;
  summary["cbar_estimate"] = cbar.min_value;
  if (!o.summary_path.empty()) {
    EmitText(DumpJson(summary), o.summary_path, out);
  } else if (!o.out_path.empty()) {
    out << DumpJson(summary);
  }
}

void RunEquivalence(const Options& o, std::ostream& out) {
  const Game game = LoadGameFile(o.game_path);
  const NormalFormGame nf = ToNormalForm(game);
  const DualPoint p =
      ParseDualPoint(InlineOrFile(o.point), nf.strategy_counts());
  const double c_g = CMulti(nf, p);
  const double c_h = CGraphical(InducedGraphicalGame(nf, p), p);
  const double tol = ScaledTol(o, game);
  Json doc;
  doc["C_G"] = c_g;
  doc["C_H"] = c_h;
  doc["abs_difference"] = std::abs(c_g - c_h);
  doc["tolerance"] = tol;
  doc["equivalent"] = std::abs(c_g - c_h) <= tol;
  EmitText(DumpJson(doc), o.out_path, out);
}

void RunPotentialCheck(const Options& o, std::ostream& out) {
  const Game game = LoadGameFile(o.game_path);
  const double tol = ScaledTol(o, game);
  Json doc;
  if (const auto* g = std::get_if<BimatrixGame>(&game);
      g != nullptr && o.potential.empty()) {
    const std::optional<Matrix> p = ExtractBimatrixPotential(*g, tol);
    doc["is_potential"] = p.has_value();
    doc["potential"] = p ? MatrixToJson(*p) : Json();
  } else {
    const NormalFormGame nf = ToNormalForm(game);
    std::optional<Tensor> p;
    if (!o.potential.empty()) {
      Tensor given =
          ParseTensor(InlineOrFile(o.potential), nf.strategy_counts());
      if (IsPotentialGame(nf, given, tol)) p = std::move(given);
    } else {
      p = ExtractPotential(nf, tol);
    }
    doc["is_potential"] = p.has_value();
    doc["potential"] = p ? TensorToJson(*p) : Json();
  }
  doc["tolerance"] = tol;
  EmitText(DumpJson(doc), o.out_path, out);
}

}  // namespace

int ParseAndDispatch(int argc, const char* const* argv, std::ostream& out,
                     std::ostream& err) {
  Options o;
  CLI::App app{"chaoscope: volume analysis of learning dynamics in games",
               "chaoscope"};
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "Seed for every random choice")
      ->capture_default_str();

  auto game_flag = [&](CLI::App* sub) {
    sub->add_option("--game", o.game_path, "Game JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", o.out_path, "Output file (default: stdout)");
  };
  auto rule_flags = [&](CLI::App* sub) {
    sub->add_option("--rule", o.rule, "mwu | omwu | omwu_surrogate | ftrl")
        ->capture_default_str();
    sub->add_option("--regularizer", o.regularizer,
                    "entropic | squared_euclidean (ftrl only)");
    sub->add_option("--epsilon", o.epsilon, "Step size")
        ->capture_default_str();
    sub->add_option("--steps", o.steps, "Number of updates")
        ->required()
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--start", o.start,
                    "Start dual point: JSON, file, or 'uniform'")
        ->capture_default_str();
  };

  CLI::App* decompose =
      app.add_subcommand("decompose", "Zero-sum/coordination split");
  game_flag(decompose);

  CLI::App* cfun = app.add_subcommand("cfun", "Evaluate C at dual points");
  game_flag(cfun);
  cfun->add_option("--points", o.points, "JSON list of dual points")
      ->required();

  CLI::App* certify = app.add_subcommand("certify", "Issue a chaos certificate");
  game_flag(certify);
  certify->add_option("--criterion", o.criterion)
      ->required()
      ->check(CLI::IsMember({"domination", "lp", "graphical", "potential"}));
  certify->add_option("--delta", o.delta, "Region parameter")->required();
  certify->add_option("--epsilon", o.epsilon)->capture_default_str();
  certify->add_option("--algorithm", o.algorithm, "mwu | omwu")
      ->capture_default_str();
  certify->add_option("--potential", o.potential, "Potential tensor JSON");
  certify->add_option("--samples", o.samples,
                      "Sample count for the uncertified estimate")
      ->capture_default_str();
  certify->add_option("--tol", o.tol)->capture_default_str();

  CLI::App* simulate = app.add_subcommand("simulate", "Run a trajectory");
  game_flag(simulate);
  rule_flags(simulate);
  simulate->add_option("--delta", o.delta, "Region parameter for the flag");

  CLI::App* volume =
      app.add_subcommand("volume", "Accumulate log det(I + eps J)");
  game_flag(volume);
  rule_flags(volume);
  volume->add_option("--delta", o.delta, "Region parameter");
  volume->add_option("--fd-step", o.fd_step)->capture_default_str();
  volume->add_option("--summary", o.summary_path, "JSON summary file");

  CLI::App* lyapunov =
      app.add_subcommand("lyapunov", "Ensemble divergence estimate");
  game_flag(lyapunov);
  rule_flags(lyapunov);
  lyapunov->add_option("--delta", o.delta, "Region parameter")->required();
  lyapunov->add_option("--radius", o.radius, "Initial ball radius")
      ->capture_default_str();
  lyapunov->add_option("--ensemble", o.ensemble, "Ensemble size")
      ->capture_default_str();
  lyapunov->add_option("--samples", o.samples,
                       "Sample count for the cbar estimate")
      ->capture_default_str();
  lyapunov->add_option("--summary", o.summary_path, "JSON summary file");

  CLI::App* equivalence = app.add_subcommand(
      "equivalence", "Compare C with the induced graphical game at a point");
  game_flag(equivalence);
  equivalence->add_option("--point", o.point, "Dual point: JSON or file")
      ->required();
  equivalence->add_option("--tol", o.tol)->capture_default_str();

  CLI::App* potential =
      app.add_subcommand("potential-check", "Test for an exact potential");
  game_flag(potential);
  potential->add_option("--potential", o.potential, "Candidate potential");
  potential->add_option("--tol", o.tol)->capture_default_str();

  // CLI11 reports a stray word as a missing subcommand; name it instead.
  for (int a = 1; a < argc; ++a) {
    const std::string word = argv[a];
    if (word == "--seed") {
      ++a;
      continue;
    }
    if (word.rfind("-", 0) == 0) break;
    if (app.get_subcommand_no_throw(word) == nullptr) {
      err << "error: subcommand: unknown '" << word << "'\n";
      return kExitInvalid;
    }
    break;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (decompose->parsed()) RunDecompose(o, out);
    if (cfun->parsed()) RunCfun(o, out);
    if (certify->parsed()) RunCertify(o, out);
    if (simulate->parsed()) RunSimulate(o, out);
    if (volume->parsed()) RunVolume(o, out);
    if (lyapunov->parsed()) RunLyapunov(o, out);
    if (equivalence->parsed()) RunEquivalence(o, out);
    if (potential->parsed()) RunPotentialCheck(o, out);
  } catch (const OverflowAbort& e) {
    err << "error: " << e.what() << " (last finite step "
        << e.last_finite_index() << ")\n";
    return kExitOverflow;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}

}  // namespace chaoscope::tools
