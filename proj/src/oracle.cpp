#include "cakecut/oracle.hpp"

#include <sstream>
#include <stdexcept>

namespace cakecut {

Scalar Instance::total_demand() const {
  Scalar sum;
  for (const Player& p : players) sum += p.demand;
  return sum;
}

const Measure& Instance::measure_of(std::size_t player) const {
  return measures.at(players.at(player).measure_index);
}

void Instance::validate() const {
  if (players.empty()) throw std::invalid_argument("instance needs at least one player");
  if (measures.empty()) throw std::invalid_argument("instance needs at least one measure");
  for (const Player& p : players) {
    if (p.demand.sign() <= 0)
      throw std::invalid_argument("player demands must be positive");
    if (p.measure_index >= measures.size())
      throw std::invalid_argument("player measure index out of range");
  }
  const Scalar total = total_demand();
  for (std::size_t k = 0; k < measures.size(); ++k) {
    if (measures[k].extent() != cake.extent())
      throw std::invalid_argument("measure extent does not match the cake");
    if (measures[k].total() != total)
      throw std::invalid_argument("measure total must equal the demand sum");
  }
}

Scalar MeasureValuation::proportional_cut(const Knife& f, const BigInt& a, const BigInt& b) {
  const Scalar over = measure_eval(mu_, f.domain());
  const Scalar alpha = Scalar(Rational(a, a + b)) * over;
  auto x = measure_cut(mu_, f, alpha);
  // alpha <= mu(I), so a position always exists.
  return *x;
}

std::string TranscriptEntry::to_line() const {
  std::ostringstream os;
  os << "player=" << player << " kind=";
  switch (kind) {
    case QueryKind::eval:
      os << "eval args=I=" << I.to_string();
      break;
    case QueryKind::cut:
      os << "cut args=I=" << I.to_string() << ";f=" << knife_spec
         << ";alpha=" << alpha.to_string();
      break;
    case QueryKind::pcut:
      os << "pcut args=I=" << I.to_string() << ";f=" << knife_spec << ";a=" << a
         << ";b=" << b;
      break;
  }
  os << " ans=" << (answer ? answer->to_string() : "none");
  return os.str();
}

namespace {

// "key=value", splitting on the first '='.
std::pair<std::string, std::string> split_kv(const std::string& tok, const char* what) {
  const auto eq = tok.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument(std::string("malformed ") + what + ": '" + tok + "'");
  return {tok.substr(0, eq), tok.substr(eq + 1)};
}

BigInt parse_bigint(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer in transcript");
  std::size_t k = (s[0] == '-') ? 1 : 0;
  if (k == s.size()) throw std::invalid_argument("malformed integer: '" + s + "'");
  for (; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw std::invalid_argument("malformed integer: '" + s + "'");
  return BigInt(s);
}

}  // namespace

TranscriptEntry TranscriptEntry::parse_line(const std::string& line) {
  std::istringstream is(line);
  std::string tok;
  std::vector<std::pair<std::string, std::string>> fields;
  while (is >> tok) fields.push_back(split_kv(tok, "transcript field"));
  if (fields.size() != 4 || fields[0].first != "player" || fields[1].first != "kind" ||
      fields[2].first != "args" || fields[3].first != "ans")
    throw std::invalid_argument("malformed transcript line: '" + line + "'");

  TranscriptEntry e;
  e.player = std::stoi(fields[0].second);

  std::vector<std::pair<std::string, std::string>> args;
  {
    std::istringstream as(fields[2].second);
    std::string part;
    while (std::getline(as, part, ';')) args.push_back(split_kv(part, "query argument"));
  }
  auto arg = [&](const char* key) -> const std::string& {
    for (const auto& [k, v] : args)
      if (k == key) return v;
    throw std::invalid_argument(std::string("transcript line missing argument '") +
                                key + "': '" + line + "'");
  };

  const std::string& kind = fields[1].second;
  if (kind == "eval") {
    e.kind = QueryKind::eval;
    if (args.size() != 1) throw std::invalid_argument("eval takes exactly one argument");
    e.I = Piece::parse(arg("I"));
  } else if (kind == "cut") {
    e.kind = QueryKind::cut;
    e.I = Piece::parse(arg("I"));
    e.knife_spec = arg("f");
    e.alpha = Scalar::parse(arg("alpha"));
  } else if (kind == "pcut") {
    e.kind = QueryKind::pcut;
    e.I = Piece::parse(arg("I"));
    e.knife_spec = arg("f");
    e.a = parse_bigint(arg("a"));
    e.b = parse_bigint(arg("b"));
  } else {
    throw std::invalid_argument("unknown query kind: '" + kind + "'");
  }

  if (fields[3].second != "none") e.answer = Scalar::parse(fields[3].second);
  return e;
}

bool operator==(const TranscriptEntry& x, const TranscriptEntry& y) {
  if (x.player != y.player || x.kind != y.kind || !(x.I == y.I) || x.answer != y.answer)
    return false;
  switch (x.kind) {
    case QueryKind::eval:
      return true;
    case QueryKind::cut:
      return x.knife_spec == y.knife_spec && x.alpha == y.alpha;
    case QueryKind::pcut:
      return x.knife_spec == y.knife_spec && x.a == y.a && x.b == y.b;
  }
  return false;
}

Oracle::Oracle(Instance inst, OracleOptions opts) : inst_(std::move(inst)), opts_(opts) {
  inst_.validate();
  counts_.resize(inst_.n());
  backends_.reserve(inst_.n());
  for (std::size_t p = 0; p < inst_.n(); ++p)
    backends_.push_back(std::make_unique<MeasureValuation>(inst_.measure_of(p)));
}

void Oracle::set_backend(std::size_t player, std::unique_ptr<Valuation> v) {
  if (!v) throw std::invalid_argument("null valuation backend");
  backends_.at(player) = std::move(v);
}

Valuation& Oracle::backend(std::size_t player) { return *backends_.at(player); }

Scalar Oracle::eval(std::size_t player, const Piece& I) {
  if (!inst_.cake.contains(I)) throw std::domain_error("piece outside the cake");
  const Scalar ans = backend(player).eval(I);
  counts_.at(player).evals += 1;
  if (opts_.record_transcript)
    log_.push_back({static_cast<int>(player), QueryKind::eval, I, "", Scalar(), BigInt(),
                    BigInt(), ans});
  return ans;
}

std::optional<Scalar> Oracle::cut(std::size_t player, const Knife& f, const Scalar& alpha) {
  if (alpha.sign() < 0) throw std::domain_error("cut target must be non-negative");
  const auto ans = backend(player).cut(f, alpha);
  counts_.at(player).cuts += 1;
  if (opts_.record_transcript)
    log_.push_back({static_cast<int>(player), QueryKind::cut, f.domain(), f.spec_string(),
                    alpha, BigInt(), BigInt(), ans});
  return ans;
}

Scalar Oracle::proportional_cut(std::size_t player, const Knife& f, const BigInt& a,
                                const BigInt& b) {
  if (a < 0 || b < 0 || a + b == 0)
    throw std::domain_error("proportional cut ratio needs a, b >= 0 and a + b > 0");
  const Scalar ans = backend(player).proportional_cut(f, a, b);
  counts_.at(player).pcuts += 1;
  if (opts_.record_transcript)
    log_.push_back({static_cast<int>(player), QueryKind::pcut, f.domain(), f.spec_string(),
                    Scalar(), a, b, ans});
  return ans;
}

Scalar Oracle::reference_value(std::size_t player, const Piece& I) {
  return backend(player).reference_value(I);
}

QueryCounts Oracle::totals() const {
  QueryCounts t;
  for (const QueryCounts& c : counts_) t += c;
  return t;
}

std::vector<std::string> replay_transcript(const Instance& inst,
                                           const std::vector<TranscriptEntry>& log) {
  std::vector<std::string> errors;
  auto note = [&](std::size_t i, const TranscriptEntry& e, const std::string& msg) {
    errors.push_back("line " + std::to_string(i + 1) + " player " +
                     std::to_string(e.player) + ": " + msg);
  };
  auto show = [](const std::optional<Scalar>& v) {
    return v ? v->to_string() : std::string("none");
  };

  for (std::size_t i = 0; i < log.size(); ++i) {
    const TranscriptEntry& e = log[i];
    try {
      if (e.player < 0 || static_cast<std::size_t>(e.player) >= inst.n()) {
        note(i, e, "no such player");
        continue;
      }
      const Measure& mu = inst.measure_of(static_cast<std::size_t>(e.player));
      std::optional<Scalar> expect;
      if (e.kind == QueryKind::eval) {
        expect = measure_eval(mu, e.I);
      } else {
        const Knife f = Knife::parse_spec(e.knife_spec, inst.cake, e.I);
        if (e.kind == QueryKind::cut) {
          expect = measure_cut(mu, f, e.alpha);
        } else {
          const Scalar alpha = Scalar(Rational(e.a, e.a + e.b)) * measure_eval(mu, e.I);
          expect = measure_cut(mu, f, alpha);
        }
      }
      if (expect != e.answer)
        note(i, e, "ans " + show(e.answer) + ", expected " + show(expect));
    } catch (const std::exception& ex) {
      note(i, e, std::string("replay failed: ") + ex.what());
    }
  }
  return errors;
}

std::vector<std::string> witness_mismatches(const Instance& inst,
                                            const std::vector<TranscriptEntry>& log) {
  std::vector<std::string> errors;
  auto note = [&](std::size_t i, const TranscriptEntry& e, const std::string& msg) {
    errors.push_back("line " + std::to_string(i + 1) + " player " +
                     std::to_string(e.player) + ": " + msg);
  };

  for (std::size_t i = 0; i < log.size(); ++i) {
    const TranscriptEntry& e = log[i];
    try {
      if (e.player < 0 || static_cast<std::size_t>(e.player) >= inst.n()) {
        note(i, e, "no such player");
        continue;
      }
      const Measure& mu = inst.measure_of(static_cast<std::size_t>(e.player));
      if (e.kind == QueryKind::eval) {
        const Scalar v = measure_eval(mu, e.I);
        if (!e.answer || *e.answer != v)
          note(i, e, "eval answered " + (e.answer ? e.answer->to_string() : std::string("none")) +
                         " but the piece is worth " + v.to_string());
        continue;
      }
      const Knife f = Knife::parse_spec(e.knife_spec, inst.cake, e.I);
      if (e.kind == QueryKind::cut) {
        if (!e.answer) {
          if (measure_eval(mu, e.I) >= e.alpha)
            note(i, e, "refused a cut although the piece is worth " +
                           measure_eval(mu, e.I).to_string());
        } else if (measure_eval(mu, f.piece(*e.answer)) != e.alpha) {
          note(i, e, "cut at " + e.answer->to_string() + " carves value " +
                         measure_eval(mu, f.piece(*e.answer)).to_string() +
                         ", not " + e.alpha.to_string());
        }
        continue;
      }
      if (!e.answer) {
        note(i, e, "ratio cut without an answer");
        continue;
      }
      const Scalar inside = measure_eval(mu, f.piece(*e.answer));
      const Scalar outside = measure_eval(mu, e.I) - inside;
      if (Scalar(e.b) * inside != Scalar(e.a) * outside)
        note(i, e, "ratio cut at " + e.answer->to_string() + " splits " +
                       inside.to_string() + " : " + outside.to_string() +
                       ", not " + e.a.str() + " : " + e.b.str());
    } catch (const std::exception& ex) {
      note(i, e, std::string("check failed: ") + ex.what());
    }
  }
  return errors;
}

std::string transcript_to_text(const std::vector<TranscriptEntry>& log) {
  std::string out;
  for (const TranscriptEntry& e : log) {
    out += e.to_line();
    out += '\n';
  }
  return out;
}

std::vector<TranscriptEntry> transcript_from_text(const std::string& text) {
  std::vector<TranscriptEntry> log;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    log.push_back(TranscriptEntry::parse_line(line));
  }
  return log;
}

}  // namespace cakecut
