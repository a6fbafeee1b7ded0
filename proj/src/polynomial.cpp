#include "dads/polynomial.hpp"

#include <cctype>

namespace dads {

Polynomial::Polynomial(std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.coeff != 0.0) terms_.push_back(t);
  }
}

double Polynomial::operator()(double y, double w, double delta) const {
  const std::array<double, 3> x{y, w, delta};
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (int k = 0; k < 3; ++k) {
      for (int e = 0; e < t.powers[k]; ++e) v *= x[k];
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::derivative(int variable) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const int e = t.powers[variable];
    if (e == 0) continue;
    Term d = t;
    d.coeff *= e;
    d.powers[variable] = e - 1;
    out.push_back(d);
  }
  return Polynomial(std::move(out));
}

bool Polynomial::depends_on(int variable) const {
  for (const auto& t : terms_) {
    if (t.powers[variable] > 0) return true;
  }
  return false;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  Polynomial run() {
    std::vector<Polynomial::Term> terms;
    skip_ws();
    if (at_end()) throw error("empty polynomial");
    bool first = true;
    while (!at_end()) {
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw error("expected '+' or '-'");
      }
      auto term = parse_term();
      term.coeff *= sign;
      terms.push_back(term);
      first = false;
      skip_ws();
    }
    return Polynomial(std::move(terms));
  }

 private:
  Polynomial::Term parse_term() {
    Polynomial::Term term{1.0, {0, 0, 0}};
    while (true) {
      parse_factor(term);
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
        continue;
      }
      return term;
    }
  }

  void parse_factor(Polynomial::Term& term) {
    if (at_end()) throw error("unexpected end");
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      const double v = std::stod(std::string(text_.substr(pos_)), &used);
      pos_ += used;
      term.coeff *= v;
      return;
    }
    int var = -1;
    if (text_.substr(pos_, 5) == "delta") {
      var = 2;
      pos_ += 5;
    } else if (c == 'y') {
      var = 0;
      ++pos_;
    } else if (c == 'w') {
      var = 1;
      ++pos_;
    } else {
      throw error(std::string("unexpected character '") + c + "'");
    }
    int power = 1;
    skip_ws();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (start == pos_) throw error("expected integer exponent");
      power = std::stoi(std::string(text_.substr(start, pos_ - start)));
    }
    term.powers[var] += power;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  ConfigError error(const std::string& why) const {
    return ConfigError("polynomial '" + std::string(text_) + "': " + why + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text) { return PolyParser(text).run(); }

}  // namespace dads
