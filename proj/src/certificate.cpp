#include "fc/certificate.hpp"

#include "json.hpp"

namespace fc {

using nlohmann::json;

namespace {

json family_json(const Family& f) {
  json out = json::array();
  for (MemberSet s : f) out.push_back(s.elements());
  return out;
}

json rationals_json(const std::vector<Rational>& values) { return to_strings(values); }

[[noreturn]] void fail(const std::string& what) { throw CertificateFormatError(what); }

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) fail(std::string("missing field '") + key + "'");
  return obj.at(key);
}

int as_int(const json& v, const char* what) {
  if (!v.is_number_integer()) fail(std::string(what) + " must be an integer");
  return v.get<int>();
}

Family parse_members(const json& v, int n, const char* what) {
  if (!v.is_array()) fail(std::string(what) + " must be a list of sets");
  std::vector<MemberSet> members;
  for (const auto& set : v) {
    if (!set.is_array()) fail(std::string(what) + " members must be lists");
    std::vector<int> elems;
    for (const auto& e : set) {
      const int x = as_int(e, what);
      if (x < 1 || x > n) fail(std::string(what) + " element " + std::to_string(x) + " out of range");
      elems.push_back(x);
    }
    members.push_back(MemberSet::from_elements(elems));
  }
  return Family(n, members);
}

Rational parse_q(const json& v, const char* what) {
  if (!v.is_string()) fail(std::string(what) + " must be a \"p/q\" string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(std::string(what) + ": " + e.what());
  }
}

std::vector<Rational> parse_qs(const json& v, const char* what) {
  if (!v.is_array()) fail(std::string(what) + " must be a list");
  std::vector<Rational> out;
  for (const auto& x : v) out.push_back(parse_q(x, what));
  return out;
}

std::vector<int> parse_ints(const json& v, const char* what) {
  if (!v.is_array()) fail(std::string(what) + " must be a list");
  std::vector<int> out;
  for (const auto& x : v) out.push_back(as_int(x, what));
  return out;
}

}  // namespace

std::string certificate_to_json(const Certificate& cert) {
  json j;
  j["kind"] = cert.is_fc() ? "fc" : "non-fc";
  j["n"] = cert.n;
  j["family"] = family_json(cert.family);
  j["closure_size"] = cert.closure_size;
  j["closure_frequencies"] = cert.closure_frequencies;
  j["domain"] = cert.domain ? family_json(*cert.domain) : json("full");
  j["weights"] = rationals_json(cert.weights);
  json cuts = json::array(), sizes = json::array(), freqs = json::array();
  for (const auto& c : cert.cuts) {
    cuts.push_back(family_json(c.family));
    sizes.push_back(c.size);
    freqs.push_back(c.frequencies);
  }
  j["cuts"] = cuts;
  j["cut_sizes"] = sizes;
  j["cut_frequencies"] = freqs;
  if (cert.is_fc()) {
    j["farkas"] = nullptr;
  } else {
    j["farkas"] = {
        {"multipliers", rationals_json(cert.farkas.multipliers)},
        {"lambda", cert.farkas.lambda.empty() ? json(nullptr) : json(to_string(cert.farkas.lambda[0]))},
        {"combination", rationals_json(cert.farkas_combination)},
        {"bound", to_string(cert.farkas_bound)},
    };
  }
  j["symmetry"] = cert.symmetry;
  if (cert.orbits) j["orbits"] = cert.orbits->orbits();
  return j.dump(1) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("not valid JSON: ") + e.what());
  }
  Certificate cert;
  const auto& kind = field(j, "kind");
  if (kind == "fc") {
    cert.verdict = Verdict::fc;
  } else if (kind == "non-fc") {
    cert.verdict = Verdict::non_fc;
  } else {
    fail("kind must be \"fc\" or \"non-fc\"");
  }
  cert.n = as_int(field(j, "n"), "n");
  if (cert.n < 1 || cert.n > kMaxSolveGround) fail("n out of range");
  cert.family = parse_members(field(j, "family"), cert.n, "family");
  const auto& closure_size = field(j, "closure_size");
  if (!closure_size.is_number_unsigned()) fail("closure_size must be a nonnegative integer");
  cert.closure_size = closure_size.get<std::size_t>();
  cert.closure_frequencies = parse_ints(field(j, "closure_frequencies"), "closure_frequencies");

  const auto& domain = field(j, "domain");
  if (domain.is_string()) {
    if (domain != "full") fail("domain must be \"full\" or a list of sets");
  } else {
    cert.domain = parse_members(domain, cert.n, "domain");
  }
  cert.weights = parse_qs(field(j, "weights"), "weights");

  const auto& cuts = field(j, "cuts");
  const auto sizes = parse_ints(field(j, "cut_sizes"), "cut_sizes");
  const auto& freqs = field(j, "cut_frequencies");
  if (!cuts.is_array() || !freqs.is_array()) fail("cuts and cut_frequencies must be lists");
  if (sizes.size() != cuts.size() || freqs.size() != cuts.size()) fail("cut arrays differ in length");
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    Cut c;
    c.family = parse_members(cuts[i], cert.n, "cut");
    if (sizes[i] < 0) fail("negative cut size");
    c.size = static_cast<std::size_t>(sizes[i]);
    c.frequencies = parse_ints(freqs[i], "cut_frequencies");
    cert.cuts.push_back(std::move(c));
  }

  const auto& farkas = field(j, "farkas");
  if (cert.is_fc()) {
    if (!farkas.is_null()) fail("fc certificate must have a null farkas field");
  } else {
    cert.farkas.multipliers = parse_qs(field(farkas, "multipliers"), "multipliers");
    cert.farkas.lambda = {parse_q(field(farkas, "lambda"), "lambda")};
    cert.farkas_combination = parse_qs(field(farkas, "combination"), "combination");
    cert.farkas_bound = parse_q(field(farkas, "bound"), "bound");
  }

  const auto& symmetry = field(j, "symmetry");
  if (!symmetry.is_boolean()) fail("symmetry must be a boolean");
  cert.symmetry = symmetry.get<bool>();
  if (j.contains("orbits")) {
    const auto& orbits = j.at("orbits");
    if (!orbits.is_array()) fail("orbits must be a list of element lists");
    OrbitPartition part;
    part.orbit_id.assign(cert.n, -1);
    int id = 0;
    for (const auto& orbit : orbits) {
      for (const auto& e : parse_ints(orbit, "orbits")) {
        if (e < 1 || e > cert.n || part.orbit_id[e - 1] >= 0) fail("orbits are not a partition of [n]");
        part.orbit_id[e - 1] = id;
      }
      ++id;
    }
    for (int x : part.orbit_id) {
      if (x < 0) fail("orbits are not a partition of [n]");
    }
    cert.orbits = part;
  }
  return cert;
}

}  // namespace fc
