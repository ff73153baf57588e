#include "unirecover/function_spec.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "unirecover/function_classes.hpp"

namespace unirecover {

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(tok, &used));
    if (used != tok.size()) throw std::invalid_argument("bad number '" + tok + "'");
  }
  return out;
}

FunctionSpec parse_bernoulli(const std::string& text, const std::string& body, bool member) {
  std::map<std::string, std::string> fields;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value in '" + item + "'");
    fields[item.substr(0, eq)] = item.substr(eq + 1);
  }
  for (const auto& [key, value] : fields) {
    if (key != "r" && key != "alpha" && key != "K") {
      throw std::invalid_argument("unknown function parameter '" + key + "'");
    }
  }
  if (!fields.count("r")) throw std::invalid_argument("function spec needs r=...");
  const auto r = parse_list(fields["r"]);
  std::vector<double> alpha = fields.count("alpha") ? parse_list(fields["alpha"])
                                                    : std::vector<double>(r.size(), 0.0);
  const std::int64_t K = fields.count("K") ? std::stoll(fields["K"]) : kDefaultTruncation;
  auto f = std::make_shared<BernoulliProduct>(member ? make_class_member(r, alpha, K)
                                                     : make_test_function(r, alpha, K));
  FunctionSpec spec;
  spec.text = text;
  spec.smoothness = f->smoothness();
  spec.tail_bound = f->tail_bound();
  spec.sampler = std::move(f);
  return spec;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return in;
}

}  // namespace

FunctionSpec parse_function_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("function spec must look like kind:params, got '" + text + "'");
  }
  const std::string kind = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);
  if (kind == "bernoulli") return parse_bernoulli(text, body, false);
  if (kind == "sobolev") return parse_bernoulli(text, body, true);
  FunctionSpec spec;
  spec.text = text;
  if (kind == "trig") {
    auto in = open_input(body);
    spec.sampler = std::make_shared<TrigPolynomialFunction>(read_trig_polynomial(in));
    return spec;
  }
  if (kind == "samples") {
    auto in = open_input(body);
    spec.samples = read_samples(in);
    return spec;
  }
  throw std::invalid_argument("unknown function kind '" + kind + "'");
}

}  // namespace unirecover
