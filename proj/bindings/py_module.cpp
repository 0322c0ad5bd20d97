#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cakecut/bench.hpp"
#include "cakecut/generator.hpp"
#include "cakecut/io.hpp"
#include "cakecut/verify.hpp"

namespace py = pybind11;
using namespace cakecut;

namespace {

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
  return out;
}

}  // namespace

PYBIND11_MODULE(_cakecut, m) {
  m.doc() = "exact proportional cake cutting with unequal demands";

  m.def(
      "ceil_log2", [](long long n) { return ceil_log2(BigInt(n)); },
      "Smallest t >= 0 with 2^t >= n.", py::arg("n"));
  m.def(
      "near_half_split",
      [](long long D) {
        auto [lo, hi] = near_half_split(BigInt(D));
        return py::make_tuple(lo.convert_to<long long>(), hi.convert_to<long long>());
      },
      "(floor(D/2), ceil(D/2)).", py::arg("D"));

  m.def(
      "generate_instance",
      [](std::uint64_t seed, int n, long long D, int max_cells) {
        return serialize_instance(gen_random_instance(seed, n, BigInt(D), max_cells));
      },
      "Deterministic random instance as JSON: integer demands summing to D.",
      py::arg("seed"), py::arg("n"), py::arg("D"), py::arg("max_cells") = 8);
  m.def(
      "generate_quad_instance",
      [](std::uint64_t seed, int n, int max_cells) {
        return serialize_instance(gen_quad_instance(seed, n, max_cells));
      },
      "Deterministic random instance with demands in Q(sqrt 2), as JSON.",
      py::arg("seed"), py::arg("n"), py::arg("max_cells") = 8);
  m.def(
      "validate_instance", [](const std::string& text) { parse_instance(text); },
      "Raises ValueError unless the JSON describes a well-formed instance.",
      py::arg("instance_json"));

  m.def(
      "divide",
      [](const std::string& instance_json, const std::string& protocol,
         const std::string& knife, bool transcript) {
        Instance inst = parse_instance(instance_json);
        RunResult run =
            run_named_protocol(protocol, inst, knife_from(knife), transcript);
        py::dict out;
        out["division"] = serialize_division(inst, run.division);
        out["queries_highlevel"] = run.totals.highlevel_total();
        out["queries_ws"] = run.totals.ws_equivalent();
        out["theorem_bound"] = run.theorem_bound;
        if (transcript) out["transcript"] = transcript_to_text(run.transcript);
        return out;
      },
      "Run a protocol (batch, cnh2, cnh-rec, clone, irrational) on an instance.",
      py::arg("instance_json"), py::arg("protocol") = "batch",
      py::arg("knife") = "prefix", py::arg("transcript") = false);

  m.def(
      "verify",
      [](const std::string& instance_json, const std::string& division_json) {
        Instance inst = parse_instance(instance_json);
        Division div = parse_division(division_json, inst.n());
        return serialize_verify_report(verify_division(inst, div));
      },
      "Exact partition + proportionality report as JSON.",
      py::arg("instance_json"), py::arg("division_json"));

  m.def(
      "adversary_experiment",
      [](int n, long long D, std::uint64_t seed, const std::string& protocol,
         const std::string& c1, const std::string& c2) {
        const Rational r1 = c1.empty() ? Rational(n - 1, n) : parse_rational(c1);
        const Rational r2 = c2.empty() ? Rational(n - 1, n) : parse_rational(c2);
        ProtocolFn fn;
        if (protocol == "batch")
          fn = [](Oracle& o) { return batch_near_half(o, KnifeKind::prefix); };
        else if (protocol == "cnh2")
          fn = [](Oracle& o) { return cut_near_halves_2p(o, KnifeKind::prefix); };
        else if (protocol == "cnh-rec")
          fn = [](Oracle& o) { return recursive_cut_near_halves(o, KnifeKind::prefix); };
        else
          throw std::invalid_argument("unknown protocol \"" + protocol + "\"");
        return serialize_experiment(
            humble_greedy_experiment(fn, n, r1, r2, BigInt(D), seed));
      },
      "Lower-bound experiment certificate as JSON; c1/c2 default to (n-1)/n.",
      py::arg("n"), py::arg("D"), py::arg("seed") = 0, py::arg("protocol") = "batch",
      py::arg("c1") = "", py::arg("c2") = "");

  m.def(
      "bench_csv",
      [](const std::string& protocols, const std::string& n_list,
         const std::string& d_list, int seeds, int max_cells) {
        BenchOptions opt;
        opt.protocols = split_list(protocols);
        for (const std::string& s : split_list(n_list))
          opt.n_list.push_back(std::stoi(s));
        for (const std::string& s : split_list(d_list))
          opt.d_list.push_back(BigInt(std::stoll(s)));
        opt.seeds = seeds;
        opt.max_cells = max_cells;
        return bench_csv(run_bench(opt));
      },
      "Self-verified query-count sweep as CSV (comma-separated grids).",
      py::arg("protocols") = "batch,cnh-rec,clone", py::arg("n_list") = "4,8,16,32",
      py::arg("d_list") = "256,4096,65536", py::arg("seeds") = 1,
      py::arg("max_cells") = 8);

  py::class_<CrumbleSet>(m, "CrumbleSet",
                         "Lazily constructed worst-case valuation on [0, length).")
      .def(py::init([](const std::string& length) {
             return CrumbleSet(Cake::interval(Scalar::parse(length)));
           }),
           py::arg("length"))
      .def(
          "eval",
          [](CrumbleSet& s, const std::string& piece) {
            return s.eval(Piece::parse(piece)).to_string();
          },
          py::arg("piece"))
      .def(
          "cut",
          [](CrumbleSet& s, const std::string& domain,
             const std::string& alpha) -> py::object {
            auto r = s.cut(Knife::prefix(s.cake(), Piece::parse(domain)),
                           Scalar::parse(alpha));
            if (!r) return py::none();
            return py::cast(r->to_string());
          },
          "Leftmost prefix cut of value alpha inside the domain piece; None "
          "when the domain cannot yield alpha.",
          py::arg("domain"), py::arg("alpha"))
      .def(
          "proportional_cut",
          [](CrumbleSet& s, const std::string& domain, long long a, long long b) {
            return s
                .proportional_cut(Knife::prefix(s.cake(), Piece::parse(domain)),
                                  BigInt(a), BigInt(b))
                .to_string();
          },
          py::arg("domain"), py::arg("a"), py::arg("b"))
      .def("queries", &CrumbleSet::queries)
      .def("total_value",
           [](const CrumbleSet& s) { return s.total_value().to_string(); })
      .def("min_positive_volume",
           [](const CrumbleSet& s) { return s.min_positive_volume().to_string(); })
      .def("crumbles", [](const CrumbleSet& s) {
        py::list out;
        for (const Crumble& c : s.crumbles())
          out.append(py::make_tuple(c.region.to_string(), c.volume.to_string(),
                                    c.value.to_string()));
        return out;
      });
}
