#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cakecut/bench.hpp"
#include "cakecut/generator.hpp"
#include "cakecut/io.hpp"
#include "cakecut/verify.hpp"

using namespace cakecut;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text << "\n";
  else
    write_file(path, text + "\n");
}

KnifeKind knife_from(const std::string& s) {
  if (s == "prefix") return KnifeKind::prefix;
  if (s == "centered") return KnifeKind::centered;
  if (s == "translated") return KnifeKind::translated;
  throw std::invalid_argument("unknown knife kind \"" + s + "\"");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  if (out.empty()) throw std::invalid_argument("empty list \"" + s + "\"");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact proportional cake cutting with unequal demands"};
  app.require_subcommand(1);

  auto* divide = app.add_subcommand("divide", "run a division protocol on an instance");
  std::string d_instance, d_protocol = "batch", d_knife = "prefix", d_trace, d_out;
  divide->add_option("--instance", d_instance, "instance JSON file")->required();
  divide->add_option("--protocol", d_protocol, "batch, cnh2, cnh-rec, clone or irrational")
      ->check(CLI::IsMember({"batch", "cnh2", "cnh-rec", "clone", "irrational"}));
  divide->add_option("--knife", d_knife, "cut family: prefix, centered or translated")
      ->check(CLI::IsMember({"prefix", "centered", "translated"}));
  divide->add_option("--trace", d_trace, "write the query transcript to this file");
  divide->add_option("--out", d_out, "write the division JSON here (default stdout)");

  auto* verify = app.add_subcommand("verify", "check a division against an instance");
  std::string v_instance, v_division;
  verify->add_option("--instance", v_instance, "instance JSON file")->required();
  verify->add_option("--division", v_division, "division JSON file")->required();

  auto* adv = app.add_subcommand("adversary",
                                 "lower-bound experiment against adversarial players");
  std::string a_protocol = "batch", a_c1, a_c2;
  int a_n = 4;
  long long a_D = 81;
  std::uint64_t a_seed = 0;
  adv->add_option("--protocol", a_protocol, "protocol under attack")
      ->check(CLI::IsMember({"batch", "cnh2", "cnh-rec"}));
  adv->add_option("--n", a_n, "number of players");
  adv->add_option("--c1", a_c1, "humble player fraction (default (n-1)/n)");
  adv->add_option("--c2", a_c2, "humble demand fraction (default (n-1)/n)");
  adv->add_option("--D", a_D, "total demand / cake volume");
  adv->add_option("--seed", a_seed, "seat permutation seed");

  auto* bench = app.add_subcommand("bench", "query-count sweep over a protocol grid");
  std::string b_protocols = "batch,cnh-rec,clone", b_n = "4,8,16,32",
              b_d = "256,4096,65536", b_out;
  int b_seeds = 1, b_cells = 8;
  bool b_timing = false;
  bench->add_option("--protocols", b_protocols, "comma-separated protocol names");
  bench->add_option("--n-list", b_n, "comma-separated player counts");
  bench->add_option("--d-list", b_d, "comma-separated demand totals");
  bench->add_option("--seeds", b_seeds, "seeds 0..K-1 per cell");
  bench->add_option("--max-cells", b_cells, "measure cells per generated player");
  bench->add_flag("--timing", b_timing, "fill wall_time_ms (breaks byte determinism)");
  bench->add_option("--out", b_out, "write the CSV here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*divide) {
      Instance inst = parse_instance(read_file(d_instance));
      RunResult run =
          run_named_protocol(d_protocol, inst, knife_from(d_knife), !d_trace.empty());
      if (!d_trace.empty()) write_file(d_trace, transcript_to_text(run.transcript));
      VerifyReport rep = verify_division(inst, run.division);
      if (!rep.ok()) {
        std::cout << serialize_verify_report(rep) << "\n";
        std::cerr << "division failed verification\n";
        return 3;
      }
      emit(d_out, serialize_division(inst, run.division));
      std::cerr << "queries=" << run.totals.highlevel_total()
                << " ws=" << run.totals.ws_equivalent();
      if (run.theorem_bound >= 0) std::cerr << " bound=" << run.theorem_bound;
      std::cerr << "\n";
      return 0;
    }

    if (*verify) {
      Instance inst = parse_instance(read_file(v_instance));
      Division div = parse_division(read_file(v_division), inst.n());
      VerifyReport rep = verify_division(inst, div);
      std::cout << serialize_verify_report(rep) << "\n";
      return rep.ok() ? 0 : 3;
    }

    if (*adv) {
      if (a_n < 1 || a_D < 1) throw std::domain_error("n and D must be positive");
      const Rational c1 = a_c1.empty() ? Rational(a_n - 1, a_n) : parse_rational(a_c1);
      const Rational c2 = a_c2.empty() ? Rational(a_n - 1, a_n) : parse_rational(a_c2);
      ProtocolFn fn;
      if (a_protocol == "batch")
        fn = [](Oracle& o) { return batch_near_half(o, KnifeKind::prefix); };
      else if (a_protocol == "cnh2")
        fn = [](Oracle& o) { return cut_near_halves_2p(o, KnifeKind::prefix); };
      else
        fn = [](Oracle& o) { return recursive_cut_near_halves(o, KnifeKind::prefix); };
      ExperimentReport rep =
          humble_greedy_experiment(fn, a_n, c1, c2, BigInt(a_D), a_seed);
      std::cout << serialize_experiment(rep) << "\n";
      return rep.ok() ? 0 : 3;
    }

    BenchOptions opt;
    opt.protocols = split_list(b_protocols);
    for (const std::string& s : split_list(b_n)) opt.n_list.push_back(std::stoi(s));
    for (const std::string& s : split_list(b_d)) opt.d_list.push_back(BigInt(std::stoll(s)));
    opt.seeds = b_seeds;
    opt.max_cells = b_cells;
    opt.timing = b_timing;
    std::string csv = bench_csv(run_bench(opt));
    if (!csv.empty() && csv.back() == '\n') csv.pop_back();
    emit(b_out, csv);
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return 3;
  }
}
