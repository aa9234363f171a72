#include "khspace/serialize.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace kh {

namespace {

json node_to_json(const WeightNode* n) {
  json j;
  switch (n->kind) {
    case WeightKind::jbpow:
      j["op"] = "jbpow";
      j["s"] = n->param;
      break;
    case WeightKind::constant:
      j["op"] = "const";
      j["c"] = n->param;
      break;
    case WeightKind::add:
    case WeightKind::mul:
    case WeightKind::sup:
    case WeightKind::inf: {
      const char* name = n->kind == WeightKind::add   ? "add"
                         : n->kind == WeightKind::mul ? "mul"
                         : n->kind == WeightKind::sup ? "sup"
                                                      : "inf";
      j["op"] = name;
      j["args"] = json::array({node_to_json(n->a.get()), node_to_json(n->b.get())});
      break;
    }
    case WeightKind::pow:
      j["op"] = "pow";
      j["base"] = node_to_json(n->a.get());
      j["t"] = n->param;
      break;
    case WeightKind::reflect:
      j["op"] = "reflect";
      j["arg"] = node_to_json(n->a.get());
      break;
  }
  return j;
}

void require_keys(const json& j, std::initializer_list<const char*> keys) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys)
      if (it.key() == k) known = true;
    if (!known) throw std::invalid_argument("weight schema: unknown key '" + it.key() + "'");
  }
  for (const char* k : keys)
    if (!j.contains(k)) throw std::invalid_argument(std::string("weight schema: missing key '") + k + "'");
}

}  // namespace

json weight_to_json(const Weight& w) {
  if (!w.valid()) throw std::invalid_argument("cannot serialize an empty weight");
  return node_to_json(w.root().get());
}

Weight weight_from_json(const json& j, int dim) {
  if (!j.is_object() || !j.contains("op")) throw std::invalid_argument("weight schema: expected an object with 'op'");
  std::string op = j.at("op").get<std::string>();
  if (op == "jbpow") {
    require_keys(j, {"op", "s"});
    return Weight::jbracket_power(dim, j.at("s").get<double>());
  }
  if (op == "const") {
    require_keys(j, {"op", "c"});
    return Weight::constant(dim, j.at("c").get<double>());
  }
  if (op == "add" || op == "mul" || op == "sup" || op == "inf") {
    require_keys(j, {"op", "args"});
    const auto& args = j.at("args");
    if (!args.is_array() || args.size() < 2) throw std::invalid_argument("weight schema: 'args' needs >= 2 entries");
    Weight acc = weight_from_json(args[0], dim);
    for (std::size_t i = 1; i < args.size(); ++i) {
      Weight rhs = weight_from_json(args[i], dim);
      if (op == "add")
        acc = add(acc, rhs);
      else if (op == "mul")
        acc = mul(acc, rhs);
      else if (op == "sup")
        acc = sup_of(acc, rhs);
      else
        acc = inf_of(acc, rhs);
    }
    return acc;
  }
  if (op == "pow") {
    require_keys(j, {"op", "base", "t"});
    return weight_from_json(j.at("base"), dim).pow(j.at("t").get<double>());
  }
  if (op == "reflect") {
    require_keys(j, {"op", "arg"});
    return weight_from_json(j.at("arg"), dim).reflect();
  }
  throw std::invalid_argument("weight schema: unknown op '" + op + "'");
}

namespace {

constexpr char kMagic[4] = {'K', 'H', 'S', 'F'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_le(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_le(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}

}  // namespace

void save_field(const Field& u, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os.write(kMagic, 4);
  write_le<std::uint32_t>(os, kVersion);
  write_le<std::uint32_t>(os, static_cast<std::uint32_t>(u.grid.n));
  write_le<double>(os, u.grid.L);
  write_le<std::uint32_t>(os, static_cast<std::uint32_t>(u.grid.M));
  write_le<std::uint8_t>(os, u.domain == Domain::space ? 0 : 1);
  for (const auto& z : u.samples) {
    write_le<float>(os, static_cast<float>(z.real()));
    write_le<float>(os, static_cast<float>(z.imag()));
  }
  if (!os) throw std::runtime_error("short write to " + path);
}

Field load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) throw std::runtime_error("bad field container magic");
  auto version = read_le<std::uint32_t>(is);
  if (version != kVersion) throw std::runtime_error("unsupported field container version");
  auto n = read_le<std::uint32_t>(is);
  auto L = read_le<double>(is);
  auto M = read_le<std::uint32_t>(is);
  auto tag = read_le<std::uint8_t>(is);
  Field u(GridSpec(static_cast<int>(n), L, static_cast<int>(M)), tag == 0 ? Domain::space : Domain::frequency);
  for (auto& z : u.samples) {
    float re = read_le<float>(is);
    float im = read_le<float>(is);
    z = cplx{static_cast<double>(re), static_cast<double>(im)};
  }
  if (!is) throw std::runtime_error("short read from " + path);
  return u;
}

json field_to_json(const Field& u) {
  json j;
  j["n"] = u.grid.n;
  j["L"] = u.grid.L;
  j["M"] = u.grid.M;
  j["domain"] = u.domain == Domain::space ? "space" : "frequency";
  json samples = json::array();
  for (const auto& z : u.samples) samples.push_back(json::array({z.real(), z.imag()}));
  j["samples"] = std::move(samples);
  return j;
}

Field field_from_json(const json& j) {
  Field u(GridSpec(j.at("n").get<int>(), j.at("L").get<double>(), j.at("M").get<int>()),
          j.at("domain").get<std::string>() == "space" ? Domain::space : Domain::frequency);
  const auto& samples = j.at("samples");
  if (samples.size() != u.size()) throw std::invalid_argument("field json: sample count mismatch");
  for (std::size_t i = 0; i < u.size(); ++i)
    u.samples[i] = cplx{samples[i][0].get<double>(), samples[i][1].get<double>()};
  return u;
}

}  // namespace kh
