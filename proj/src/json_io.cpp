#include "nilgrp/json_io.hpp"

#include "nilgrp/errors.hpp"

namespace nilgrp {

Json to_json(const LieElement& x) {
  Json out = Json::object();
  for (const auto& [idx, c] : x.terms()) out[x.algebra().basis()[idx].text] = c.to_string();
  return out;
}

namespace {

class BracketParser {
 public:
  BracketParser(std::string_view text, const std::shared_ptr<const LieAlgebra>& algebra)
      : text_(text), algebra_(algebra) {}

  LieElement parse() {
    LieElement x = element();
    skip();
    if (pos_ != text_.size()) throw ParseError("trailing characters in bracket expression", pos_);
    return x;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "' in bracket expression", pos_);
    ++pos_;
  }

  LieElement element() {
    skip();
    if (pos_ < text_.size() && text_[pos_] == '[') {
      ++pos_;
      LieElement left = element();
      expect(',');
      LieElement right = element();
      expect(']');
      return bracket(left, right);
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' && text_[pos_] != ' ') ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    const auto& symbols = algebra_->context().generator_symbols;
    for (std::size_t i = 0; i < symbols.size(); ++i)
      if (symbols[i] == name) return algebra_->generator(static_cast<int>(i));
    throw ParseError("unknown generator '" + name + "'", start);
  }

  std::string_view text_;
  const std::shared_ptr<const LieAlgebra>& algebra_;
  std::size_t pos_ = 0;
};

}  // namespace

LieElement parse_bracket_expression(std::string_view text, const std::shared_ptr<const LieAlgebra>& algebra) {
  if (auto idx = algebra->find(text)) return LieElement(algebra, {{*idx, Rational(1)}});
  return BracketParser(text, algebra).parse();
}

LieElement lie_from_json(const Json& j, const std::shared_ptr<const LieAlgebra>& algebra) {
  if (!j.is_object()) throw InvalidArgument("Lie element JSON must be an object");
  LieElement out = algebra->zero();
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) throw InvalidArgument("coefficients must be \"p/q\" strings");
    out += parse_bracket_expression(key, algebra) * Rational::parse(value.get<std::string>());
  }
  return out;
}

Json to_json(const PatternCoeffs& table) {
  Json out = Json::array();
  for (const auto& [alpha, c] : table) out.push_back(Json{{"pattern", alpha.indices}, {"coefficient", c.to_string()}});
  return out;
}

Json to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return Json{{"dim", m.rows()}, {"rows", std::move(rows)}};
}

RationalMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("rows")) throw InvalidArgument("matrix JSON needs dim and rows");
  const auto d = j.at("dim").get<std::size_t>();
  const auto& rows = j.at("rows");
  if (!rows.is_array() || rows.size() != d) throw InvalidArgument("matrix JSON row count does not match dim");
  RationalMatrix m(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    if (!rows[r].is_array() || rows[r].size() != d) throw InvalidArgument("matrix JSON row length does not match dim");
    for (std::size_t c = 0; c < d; ++c) m(r, c) = Rational::parse(rows[r][c].get<std::string>());
  }
  return m;
}

Json to_json(const SynthesisCertificate& cert) {
  Json out;
  out["target"] = to_json(cert.target);
  out["word"] = serialize_word(cert.word);
  out["residual"] = to_json(cert.residual);
  if (cert.exact())
    out["min_residual_degree"] = "exact";
  else
    out["min_residual_degree"] = *cert.min_residual_degree;
  return out;
}

Json to_json(const ContainmentCertificate& cert) {
  Json q = Json::array();
  for (const auto& r : cert.rationals) q.push_back(r.to_string());
  Json k = Json::array();
  for (const auto& e : cert.exponents) k.push_back(e.get_str());
  return Json{{"j", cert.level},     {"step", cert.step},          {"rationals", q},
              {"exponents", k}, {"m", cert.scale.get_str()}, {"k", cert.power.get_str()}};
}

}  // namespace nilgrp
