#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <regex>
#include <sstream>

#include "znec/dlp.hpp"
#include "znec/infinity.hpp"

namespace znec::cli {

namespace {

using nlohmann::json;

const CLI::Validator kInteger(
    [](std::string& s) -> std::string {
      try {
        parse_integer(s);
      } catch (const std::invalid_argument&) {
        return "not a decimal integer: " + s;
      }
      return {};
    },
    "INT");

const CLI::Validator kFactorization(
    [](std::string& s) -> std::string {
      try {
        parse_factorization(s);
      } catch (const std::invalid_argument& e) {
        return e.what();
      }
      return {};
    },
    "P^E,...");

// Order of p if it is at most bound, else 0.
mpz_class order_of(const Curve& c, const CurvePoint& p, const mpz_class& bound) {
  CurvePoint r = p;
  for (mpz_class k = 1; k <= bound; ++k) {
    if (r.is_zero()) return k;
    r = c.add(r, p);
  }
  return 0;
}

struct Options {
  std::string a, b, n, p, e, factors;
  std::string px, py, qx, qy;
  bool json = false;
  bool construct = false;
};

int cmd_structure(const Options& o, std::ostream& out) {
  const Modulus m = o.factors.empty() ? Modulus(parse_integer(o.n)) : Modulus(parse_factorization(o.factors));
  if (!o.n.empty() && m.value() != parse_integer(o.n)) {
    throw std::invalid_argument("--factors multiplies to " + m.value().get_str() + ", not --n");
  }
  const Curve c(m, parse_integer(o.a), parse_integer(o.b));
  const GroupStructure gs = classify(c, Budgets::from_environment());
  if (o.json) {
    out << to_json(gs).dump() << '\n';
  } else {
    out << gs.str() << '\n';
  }
  return 0;
}

int cmd_dlp(const Options& o, std::ostream& out) {
  const Modulus m(Factorization{{parse_integer(o.p), 1}});
  const Curve c(m, parse_integer(o.a), parse_integer(o.b));
  const DlpInstance inst(c, c.point(parse_integer(o.px), parse_integer(o.py), 1),
                         c.point(parse_integer(o.qx), parse_integer(o.qy), 1));
  const DlpSolution s = solve_anomalous_dlp(inst);
  out << s.log.get_str() << '\n';
  out << "verified: " << s.log.get_str() << " * P == Q (" << s.additions << " additions)\n";
  return 0;
}

int cmd_rank_bound(const Options& o, std::ostream& out) {
  const mpz_class p = parse_integer(o.p);
  json j = to_json(rank_bound(p));
  if (o.construct) j["construction"] = to_json(construct_max_rank_curve(p));
  out << j.dump() << '\n';
  return 0;
}

int cmd_f_poly(const Options& o, std::ostream& out) {
  const long e = std::stol(o.e);
  if (e < 1) throw std::invalid_argument("--e must be at least 1");
  const Curve c(Modulus::prime_power(parse_integer(o.p), static_cast<unsigned>(e)), parse_integer(o.a),
                parse_integer(o.b));
  const InfinityPolynomial f(c);
  std::string line;
  for (const auto& coef : f.coefficients()) line += (line.empty() ? "" : " ") + coef.str();
  out << line << '\n';
  return 0;
}

int cmd_verify(std::ostream& out) {
  bool all = true;
  for (const auto& f : paper_fixtures()) {
    bool ok = false;
    try {
      ok = f.check();
    } catch (const std::exception& e) {
      out << "  (" << e.what() << ")\n";
    }
    all = all && ok;
    out << (ok ? "PASS " : "FAIL ") << f.name << '\n';
  }
  return all ? 0 : 2;
}

}  // namespace

mpz_class parse_integer(const std::string& text) {
  static const std::regex pattern("-?[0-9]+");
  if (!std::regex_match(text, pattern)) throw std::invalid_argument("not a decimal integer: " + text);
  return mpz_class(text, 10);
}

Factorization parse_factorization(const std::string& text) {
  static const std::regex item("([0-9]+)(\\^([0-9]+))?");
  Factorization out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::smatch m;
    if (!std::regex_match(part, m, item)) throw std::invalid_argument("bad factor: '" + part + "'");
    const unsigned e = m[3].matched ? static_cast<unsigned>(std::stoul(m[3].str())) : 1;
    if (e == 0) throw std::invalid_argument("exponent must be positive in '" + part + "'");
    out.push_back({mpz_class(m[1].str(), 10), e});
  }
  if (out.empty()) throw std::invalid_argument("empty factorization");
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.prime < y.prime; });
  return out;
}

json to_json(const GroupStructure& gs) {
  json factors = json::array();
  for (const auto& f : gs.factors) factors.push_back(f.get_str());
  json local = json::array();
  for (const auto& l : gs.local) {
    local.push_back({{"p", l.p.get_str()},
                     {"e", l.e},
                     {"case", to_string(l.kind)},
                     {"fp_order", l.fp_order.get_str()}});
  }
  return {{"n", gs.n.get_str()}, {"factors", factors}, {"local", local}};
}

json to_json(const RankBoundReport& r) {
  json hasse = json::array();
  for (const auto& q : r.hasse_primes) hasse.push_back(q.get_str());
  json witness = nullptr;
  if (r.chi.witness) {
    witness = {{"q", r.chi.witness->q.get_str()},
               {"a", r.chi.witness->a.get_str()},
               {"b", r.chi.witness->b.get_str()}};
  }
  return {{"p", r.p.get_str()},
          {"hasse_primes", hasse},
          {"h_p", r.h_p},
          {"chi_p", r.chi.value},
          {"chi_decided", r.chi.decided},
          {"chi_witness", witness},
          {"bound", r.bound}};
}

json to_json(const MaxRankCurve& c) {
  json skipped = json::array();
  for (const auto& q : c.skipped) skipped.push_back(q.get_str());
  return {{"a", c.a.get_str()},
          {"b", c.b.get_str()},
          {"n", c.n.get_str()},
          {"structure", to_json(c.structure)},
          {"rank", c.structure.rank()},
          {"attains_bound", c.attains_bound},
          {"skipped_primes", skipped}};
}

std::vector<Fixture> paper_fixtures() {
  std::vector<Fixture> out;
  const mpz_class p5("730750818665451459112596905638433048232067471723");
  const mpz_class a5("425706413842211054102700238164133538302169176474");
  const mpz_class b5("203362936548826936673264444982866339953265530166");

  out.push_back({"E_{7,3}(Z/169) is cyclic of order 169", [] {
                   return make_curve(7, 3, 169).modulus().value() == 169 &&
                          classify(make_curve(7, 3, 169)).factors == std::vector<mpz_class>{169};
                 }});
  out.push_back({"(0:61:1) generates E_{7,3}(Z/169)", [] {
                   const Curve c = make_curve(7, 3, 169);
                   return order_of(c, c.point(0, 61, 1), 169) == 169;
                 }});
  out.push_back({"E_{1,6}(Z/169) = Z/13 + Z/13", [] {
                   return classify(make_curve(1, 6, 169)).factors == std::vector<mpz_class>{13, 13};
                 }});
  out.push_back({"E_{1,6}(Z/169) = <(2:4:1)> + <(13:1:0)>", [] {
                   const Curve c = make_curve(1, 6, 169);
                   const CurvePoint g = c.point(2, 4, 1);
                   const CurvePoint h = c.point(13, 1, 0);
                   if (order_of(c, g, 13) != 13 || order_of(c, h, 13) != 13) return false;
                   // <g> meets the kernel of reduction, which contains h, trivially.
                   for (int k = 1; k < 13; ++k)
                     if (infinity_coordinate(c.multiply(k, g))) return false;
                   return true;
                 }});
  out.push_back({"E_{167707,21664}(Z/187187) = (Z/11)^5", [] {
                   return classify(make_curve(167707, 21664, 187187)).factors == std::vector<mpz_class>(5, 11);
                 }});
  out.push_back({"E_{63707931,239467091}(Z/659902243) = (Z/13)^8", [] {
                   return classify(make_curve(63707931, 239467091, 659902243)).factors ==
                          std::vector<mpz_class>(8, 13);
                 }});
  out.push_back({"rank bound for p = 11 is H_11 + 1 = 5", [] {
                   const auto r = rank_bound(11);
                   return r.chi.value == 0 && r.h_p == 4 && r.bound == 5;
                 }});
  out.push_back({"rank bound for p = 13 is H_13 + 3 = 8", [] {
                   const auto r = rank_bound(13);
                   return r.chi.value == 2 && r.h_p == 5 && r.bound == 8;
                 }});
  out.push_back({"E_{0,15}(F_157) = F_13 + F_13", [] {
                   const auto d = group_structure_fp(make_curve(0, 15, 157));
                   return d.n1 == 13 && d.n2 == 13;
                 }});
  out.push_back({"anomalous 160-bit curve: Theta values and discrete log", [=] {
                   const Curve c(Modulus(Factorization{{p5, 1}}), a5, b5);
                   const DlpInstance inst(
                       c, c.point(1, mpz_class("310536468939899693718962354338996655381367569020"), 1),
                       c.point(3, mpz_class("38292783053156441019740319553956376819943854515"), 1));
                   const DlpSolution s = solve_anomalous_dlp(inst);
                   return s.theta_base == mpz_class("343088892565802863386490109374548044078624360215") &&
                          s.theta_target == mpz_class("470974712001084540433398653921983741661987449793") &&
                          s.log == mpz_class("113690975836469390483838646646828917131453128585");
                 }});
  out.push_back({"f = x^3 + A x^7 + B x^9 mod 5^10 for E_{1,6}", [] {
                   const Curve c(Modulus::prime_power(5, 10), 1, 6);
                   const InfinityPolynomial f(c);
                   const auto& coefs = f.coefficients();
                   for (std::size_t i = 0; i < coefs.size(); ++i) {
                     const long want = i == 3 ? 1 : i == 7 ? 1 : i == 9 ? 6 : 0;
                     if (coefs[i].value() != want) return false;
                   }
                   return true;
                 }});
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elliptic curves over Z/NZ: group structure, anomalous DLP, rank bounds", "znec"};
  app.require_subcommand(1);
  Options o;

  auto* structure = app.add_subcommand("structure", "Group structure of E_{A,B}(Z/NZ)");
  structure->add_option("--a", o.a, "coefficient A")->required()->check(kInteger);
  structure->add_option("--b", o.b, "coefficient B")->required()->check(kInteger);
  structure->add_option("--n", o.n, "modulus N")->required()->check(kInteger);
  structure->add_option("--factors", o.factors, "factorization of N, e.g. 7,11^2,13")->check(kFactorization);
  structure->add_flag("--json", o.json, "print JSON");

  auto* dlp = app.add_subcommand("dlp", "Discrete log Q = N * P on an anomalous curve over F_p");
  for (auto [name, slot] : {std::pair{"--p", &o.p}, {"--a", &o.a}, {"--b", &o.b}, {"--px", &o.px},
                            {"--py", &o.py}, {"--qx", &o.qx}, {"--qy", &o.qy}}) {
    dlp->add_option(name, *slot)->required()->check(kInteger);
  }

  auto* rank = app.add_subcommand("rank-bound", "Rank bound H_p + chi_p + 1 as JSON");
  rank->add_option("--p", o.p, "prime p >= 5")->required()->check(kInteger);
  rank->add_flag("--construct", o.construct, "also build a curve meeting the bound");

  auto* fpoly = app.add_subcommand("f-poly", "Coefficients of f over Z/p^eZ, low degree first");
  for (auto [name, slot] : {std::pair{"--a", &o.a}, {"--b", &o.b}, {"--p", &o.p}}) {
    fpoly->add_option(name, *slot)->required()->check(kInteger);
  }
  fpoly->add_option("--e", o.e, "exponent e >= 1")->required()->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify-paper-examples", "Check every worked example, PASS/FAIL per line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*structure) return cmd_structure(o, out);
    if (*dlp) return cmd_dlp(o, out);
    if (*rank) return cmd_rank_bound(o, out);
    if (*fpoly) return cmd_f_poly(o, out);
    if (*verify) return cmd_verify(out);
  } catch (const SingularCurve& e) {
    err << "error: " << e.what() << "\ndivisor: " << e.divisor().get_str() << '\n';
    return 2;
  } catch (const NonInvertible& e) {
    err << "error: " << e.what() << "\ndivisor: " << e.gcd().get_str() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace znec::cli
