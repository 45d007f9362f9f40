#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fraccut/codecio.hpp"
#include "fraccut/fracdist.hpp"

namespace {

using namespace fraccut;

MatrixFormat format_from_flag(const std::string& name) {
  if (name == "alist") return MatrixFormat::Alist;
  if (name == "dense") return MatrixFormat::Dense;
  return MatrixFormat::Auto;
}

void add_format_flag(CLI::App* cmd, std::string* slot) {
  cmd->add_option("--format", *slot, "input format override (default: by extension)")
      ->check(CLI::IsMember({"alist", "dense"}));
}

std::string facet_status_line(const FacetResult& fr) {
  std::string s = fr.id.to_string();
  switch (fr.status) {
    case FacetResult::Status::ZeroSkipped:
      return s + " zero_skipped";
    case FacetResult::Status::Infeasible:
      return s + " infeasible";
    case FacetResult::Status::Value:
      return s + " value=" + to_annotated(fr.value) + " point=" + vector_str(fr.point);
  }
  return s;
}

struct InfoArgs {
  std::string matrix_path;
  std::string format;
};

int run_info(const InfoArgs& args) {
  BitMatrix h = load_matrix(args.matrix_path, format_from_flag(args.format));
  std::cout << "n = " << h.cols() << "\n";
  std::cout << "m = " << h.rows() << "\n";
  std::cout << "rank = " << rank(h) << "\n";
  std::map<std::size_t, std::size_t> profile;
  for (std::size_t i = 0; i < h.rows(); ++i) ++profile[h.row(i).weight()];
  std::cout << "row_weight_profile =";
  for (const auto& [weight, count] : profile) std::cout << " " << weight << ":" << count;
  std::cout << "\n";
  return 0;
}

struct FracDistArgs {
  std::string matrix_path;
  std::string format;
  std::string method = "cone";
  bool exhaustive = false;
  bool show_gamma = false;
  bool show_facets = false;
  int jobs = 1;
};

int run_fracdist(const FracDistArgs& args) {
  BitMatrix h = load_matrix(args.matrix_path, format_from_flag(args.format));
  Method method = args.method == "full" ? Method::Full : Method::Relaxed;
  SweepOptions opts;
  opts.exhaustive = args.exhaustive;
  opts.jobs = args.jobs;
  FracDistReport rep = fractional_distance(h, method, opts);
  if (rep.status != SweepStatus::Ok) {
    std::cout << "no nonzero vertices: fractional distance undefined\n";
    return 0;
  }
  std::cout << "d_frac = " << to_annotated(rep.d_frac) << "\n";
  std::cout << "method = " << (method == Method::Full ? "full" : "cone") << "\n";
  std::cout << "facets: active_skipped=" << rep.facets_skipped_active
            << " lps_solved=" << rep.facet_lps_solved << " pruned=" << rep.facets_pruned << "\n";
  std::cout << "guaranteed_errors = " << guaranteed_errors(rep.d_frac) << "\n";
  std::cout << "gamma_size = " << rep.gamma.size() << "\n";
  if (args.show_gamma) {
    for (std::size_t i = 0; i < rep.gamma.size(); ++i) {
      std::cout << "gamma[" << i << "] = " << vector_str(rep.gamma[i]) << "\n";
    }
  }
  if (args.show_facets) {
    for (const FacetResult& fr : rep.per_facet) std::cout << facet_status_line(fr) << "\n";
  }
  return 0;
}

struct ImproveArgs {
  std::string matrix_path;
  std::string format;
  std::size_t max_rows = 0;
  std::string target_dfrac;
  std::size_t fallback_limit = 20;
  bool only_improving = false;
  int jobs = 1;
  std::string out_path;
  std::string log_path;
};

int run_improve(const ImproveArgs& args) {
  BitMatrix h = load_matrix(args.matrix_path, format_from_flag(args.format));
  GreedyConfig cfg;
  cfg.max_rows = args.max_rows;
  if (!args.target_dfrac.empty()) cfg.target_dfrac = parse_rational(args.target_dfrac);
  cfg.exhaustive_fallback_limit = args.fallback_limit;
  cfg.only_improving = args.only_improving;
  SweepOptions opts;
  opts.jobs = args.jobs;
  GreedyResult res = greedy_improve(h, cfg, opts);
  write_cut_log(std::cout, res.log);
  std::cout << "rows_added = " << res.log.size() << "\n";
  if (res.last_sweep.status == SweepStatus::Ok) {
    std::cout << "d_frac = " << to_annotated(res.last_sweep.d_frac) << "\n";
  } else {
    std::cout << "no nonzero vertices: fractional distance undefined\n";
  }
  if (!args.log_path.empty()) {
    std::ofstream log_out(args.log_path);
    if (!log_out) throw ParseError("cannot open '" + args.log_path + "' for writing");
    write_cut_log(log_out, res.log);
  }
  if (!args.out_path.empty()) store_matrix(args.out_path, res.strengthened);
  return 0;
}

struct DecodeArgs {
  std::string matrix_path;
  std::string format;
  std::string received;
};

int run_decode(const DecodeArgs& args) {
  BitMatrix h = load_matrix(args.matrix_path, format_from_flag(args.format));
  BitVector received = BitVector::from_string(args.received);
  DecodeResult res = lp_decode(h, received);
  std::cout << "status = "
            << (res.status == DecodeResult::Status::Codeword ? "codeword" : "fractional") << "\n";
  std::cout << "output = " << vector_str(res.output) << "\n";
  std::cout << "objective = " << to_annotated(res.objective) << "\n";
  return 0;
}

struct SimulateArgs {
  std::string matrix_path;
  std::string format;
  std::vector<std::string> crossovers;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out_path;
};

int run_simulate(const SimulateArgs& args) {
  BitMatrix h = load_matrix(args.matrix_path, format_from_flag(args.format));
  std::vector<Rational> crossovers;
  crossovers.reserve(args.crossovers.size());
  for (const std::string& s : args.crossovers) crossovers.push_back(parse_rational(s));
  std::vector<SimPoint> points = sweep_bler(h, crossovers, args.trials, args.seed, args.jobs);
  if (args.out_path.empty()) {
    write_sim_csv(std::cout, points);
  } else {
    std::ofstream out(args.out_path);
    if (!out) throw ParseError("cannot open '" + args.out_path + "' for writing");
    write_sim_csv(out, points);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact fractional distance of binary parity-check matrices over the LP "
               "decoding polytope, with redundant-row strengthening"};
  app.require_subcommand(1);

  InfoArgs in;
  CLI::App* info_cmd = app.add_subcommand("info", "print matrix dimensions, rank, row weights");
  info_cmd->add_option("matrix", in.matrix_path, "parity-check matrix file")->required();
  add_format_flag(info_cmd, &in.format);

  FracDistArgs fd;
  CLI::App* fracdist_cmd =
      app.add_subcommand("fracdist", "compute the fractional distance of a matrix");
  fracdist_cmd->add_option("matrix", fd.matrix_path, "parity-check matrix file")->required();
  add_format_flag(fracdist_cmd, &fd.format);
  fracdist_cmd->add_option("--method", fd.method, "facet sweep method")
      ->check(CLI::IsMember({"cone", "full", "relaxed"}))
      ->capture_default_str();
  fracdist_cmd->add_flag("--exhaustive-sweep", fd.exhaustive,
                         "solve every inactive facet LP instead of pruning by bound");
  fracdist_cmd->add_flag("--gamma", fd.show_gamma, "print the minimum-weight vertices");
  fracdist_cmd->add_flag("--per-facet", fd.show_facets, "print one line per swept facet");
  fracdist_cmd->add_option("--jobs", fd.jobs, "worker threads")->check(CLI::PositiveNumber);

  ImproveArgs im;
  CLI::App* improve_cmd =
      app.add_subcommand("improve", "stack cutting redundant rows to raise the fractional distance");
  improve_cmd->add_option("matrix", im.matrix_path, "parity-check matrix file")->required();
  add_format_flag(improve_cmd, &im.format);
  improve_cmd->add_option("--max-rows", im.max_rows, "budget of rows to stack")->required();
  improve_cmd->add_option("--target-dfrac", im.target_dfrac,
                          "stop once d_frac reaches this value (rational or decimal)");
  improve_cmd->add_option("--exhaustive-fallback-limit", im.fallback_limit,
                          "largest support row set searched exhaustively when the echelon "
                          "search fails")
      ->capture_default_str();
  improve_cmd->add_flag("--only-improving", im.only_improving,
                        "discard rows that lower the fractional distance");
  improve_cmd->add_option("--jobs", im.jobs, "worker threads")->check(CLI::PositiveNumber);
  improve_cmd->add_option("-o,--out", im.out_path, "write the strengthened matrix here");
  improve_cmd->add_option("--log", im.log_path, "also write the cut log here");

  DecodeArgs de;
  CLI::App* decode_cmd = app.add_subcommand("decode", "LP-decode a received word");
  decode_cmd->add_option("matrix", de.matrix_path, "parity-check matrix file")->required();
  add_format_flag(decode_cmd, &de.format);
  decode_cmd->add_option("--received", de.received, "received bits, e.g. 0110100")->required();

  SimulateArgs si;
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "estimate the LP decoding block error rate on a BSC");
  simulate_cmd->add_option("matrix", si.matrix_path, "parity-check matrix file")->required();
  add_format_flag(simulate_cmd, &si.format);
  simulate_cmd->add_option("--crossover", si.crossovers, "crossover probabilities in [0, 1/2]")
      ->required();
  simulate_cmd->add_option("--trials", si.trials, "trials per point")->capture_default_str();
  simulate_cmd->add_option("--seed", si.seed, "base seed")->capture_default_str();
  simulate_cmd->add_option("--jobs", si.jobs, "worker threads")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("-o,--out", si.out_path, "write the CSV here instead of stdout");

  std::string convert_in, convert_out, convert_in_format, convert_out_format;
  CLI::App* convert_cmd =
      app.add_subcommand("convert", "convert between dense and alist matrix files");
  convert_cmd->add_option("input", convert_in, "input matrix file")->required();
  convert_cmd->add_option("output", convert_out, "output matrix file")->required();
  convert_cmd->add_option("--in-format", convert_in_format, "input format override")
      ->check(CLI::IsMember({"alist", "dense"}));
  convert_cmd->add_option("--out-format", convert_out_format, "output format override")
      ->check(CLI::IsMember({"alist", "dense"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(info_cmd)) return run_info(in);
    if (app.got_subcommand(fracdist_cmd)) return run_fracdist(fd);
    if (app.got_subcommand(improve_cmd)) return run_improve(im);
    if (app.got_subcommand(decode_cmd)) return run_decode(de);
    if (app.got_subcommand(simulate_cmd)) return run_simulate(si);
    if (app.got_subcommand(convert_cmd)) {
      store_matrix(convert_out, load_matrix(convert_in, format_from_flag(convert_in_format)),
                   format_from_flag(convert_out_format));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
