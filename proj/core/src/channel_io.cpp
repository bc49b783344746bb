#include "dimac/channel_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "dimac/errors.hpp"

namespace dimac {

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* name, const char* where) {
  if (!obj.is_object() || !obj.contains(name)) {
    throw InputError(fmt::format("{}: missing field '{}'", where, name));
  }
  return obj.at(name);
}

double number(const json& v, const char* what) {
  if (!v.is_number()) throw InputError(fmt::format("{} must be a number", what));
  return v.get<double>();
}

std::size_t count(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InputError(fmt::format("{} must be a nonnegative integer", what));
  }
  return v.get<std::size_t>();
}

std::vector<double> flat(const json& v, const char* what) {
  if (!v.is_array()) throw InputError(fmt::format("{} must be an array", what));
  std::vector<double> out;
  for (const auto& e : v) {
    if (e.is_array()) {
      const auto inner = flat(e, what);
      out.insert(out.end(), inner.begin(), inner.end());
    } else {
      out.push_back(number(e, what));
    }
  }
  return out;
}

MarkovChain chain_from(const json& v, const char* what) {
  const std::vector<double> t = flat(v, what);
  const auto s = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(t.size()))));
  if (s == 0 || s * s != t.size()) throw InputError(fmt::format("{} must be square", what));
  return {s, t};
}

struct Built {
  FsMac channel;
  std::optional<NoiseChain> noise;
};

Built parse_object(const json& doc);

Built from_builder(const json& b) {
  if (!b.is_object() || b.size() != 1) {
    throw InputError("builder must be an object with exactly one key");
  }
  const std::string kind = b.begin().key();
  const json& p = b.begin().value();
  if (kind == "gilbert_elliott") {
    const double alpha = number(field(p, "alpha", "gilbert_elliott"), "alpha");
    const double beta = number(field(p, "beta", "gilbert_elliott"), "beta");
    const double pg = number(field(p, "p_good", "gilbert_elliott"), "p_good");
    const double pb = number(field(p, "p_bad", "gilbert_elliott"), "p_bad");
    return {gilbert_elliott_mac(alpha, beta, pg, pb),
            NoiseChain::gilbert_elliott(alpha, beta, pg, pb)};
  }
  if (kind == "additive_modq") {
    const std::size_t q = count(field(p, "q", "additive_modq"), "q");
    NoiseChain noise;
    noise.chain = chain_from(field(p, "transition", "additive_modq"), "transition");
    noise.arity = q;
    noise.emission = flat(field(p, "emission", "additive_modq"), "emission");
    return {additive_modq_mac(q, noise), noise};
  }
  if (kind == "mux_p2p") {
    const std::vector<double> m = flat(field(p, "mux", "mux_p2p"), "mux");
    const auto q = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m.size()))));
    if (q == 0 || q * q != m.size()) throw InputError("mux table must be square");
    MuxTable mux{q, {}};
    for (double v : m) {
      if (v != std::floor(v)) throw InputError("mux entries must be integers");
      mux.table.push_back(static_cast<Symbol>(v));
    }
    const Built inner = parse_object(field(p, "p2p", "mux_p2p"));
    return {mux_p2p_compose(mux, inner.channel), std::nullopt};
  }
  if (kind == "erasure") {
    const std::size_t q = count(field(p, "q", "erasure"), "q");
    return {erasure_p2p(q, chain_from(field(p, "z_transition", "erasure"), "z_transition")),
            std::nullopt};
  }
  if (kind == "limited_isi") {
    LimitedIsiSpec s;
    s.m = count(field(p, "m", "limited_isi"), "m");
    s.in1 = count(field(p, "x1", "limited_isi"), "x1");
    s.in2 = count(field(p, "x2", "limited_isi"), "x2");
    s.outputs = count(field(p, "y", "limited_isi"), "y");
    s.z_chain = chain_from(field(p, "z_transition", "limited_isi"), "z_transition");
    s.output = flat(field(p, "output", "limited_isi"), "output");
    if (p.contains("initial_window")) s.initial_window = flat(p.at("initial_window"), "initial_window");
    return {limited_isi_to_fsmac(s), std::nullopt};
  }
  throw InputError(fmt::format("unknown builder '{}'", kind));
}

Built parse_object(const json& doc) {
  if (!doc.is_object()) throw InputError("channel spec must be a JSON object");
  std::optional<Built> built;
  if (doc.contains("builder")) built = from_builder(doc.at("builder"));
  std::optional<std::vector<double>> initial;
  if (doc.contains("initial_dist")) initial = flat(doc.at("initial_dist"), "initial_dist");

  if (doc.contains("alphabets")) {
    const json& a = doc.at("alphabets");
    const std::size_t s = count(field(a, "s", "alphabets"), "s");
    const std::size_t x1 = count(field(a, "x1", "alphabets"), "x1");
    const std::size_t x2 = count(field(a, "x2", "alphabets"), "x2");
    const std::size_t y = count(field(a, "y", "alphabets"), "y");
    if (built) {
      const FsMac& c = built->channel;
      if (c.states().size() != s || c.in1().size() != x1 || c.in2().size() != x2 ||
          c.out().size() != y) {
        throw InputError("declared alphabets disagree with the builder");
      }
    } else {
      const std::vector<double> kernel = flat(field(doc, "kernel", "channel spec"), "kernel");
      built = Built{FsMac(Alphabet(s), Alphabet(x1), Alphabet(x2), Alphabet(y), kernel),
                    std::nullopt};
    }
  } else if (!built) {
    throw InputError("channel spec needs 'alphabets' and 'kernel' or a 'builder'");
  }
  if (doc.contains("builder") && doc.contains("kernel")) {
    const std::vector<double> stored = flat(doc.at("kernel"), "kernel");
    const auto& k = built->channel.kernel();
    if (stored.size() != k.size()) throw InputError("stored kernel disagrees with the builder");
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (std::abs(stored[i] - k[i]) > 1e-12) {
        throw InputError(fmt::format("stored kernel entry {} disagrees with the builder", i));
      }
    }
  }
  if (initial) built->channel = built->channel.with_initial_dist(*initial);
  return *built;
}

json to_json(const ChannelSpec& spec) {
  const FsMac& c = spec.channel;
  json doc;
  doc["alphabets"] = {{"s", c.states().size()},
                      {"x1", c.in1().size()},
                      {"x2", c.in2().size()},
                      {"y", c.out().size()}};
  doc["kernel"] = c.kernel();
  if (c.initial_dist()) doc["initial_dist"] = *c.initial_dist();
  if (spec.builder) doc["builder"] = json::parse(*spec.builder);
  return doc;
}

}  // namespace

ChannelSpec parse_channel_spec(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(fmt::format("malformed channel spec JSON: {}", e.what()));
  }
  try {
    Built b = parse_object(doc);
    std::optional<std::string> builder;
    if (doc.contains("builder")) builder = doc.at("builder").dump();
    return {std::move(b.channel), std::move(builder), std::move(b.noise)};
  } catch (const json::exception& e) {
    throw InputError(fmt::format("invalid channel spec: {}", e.what()));
  }
}

ChannelSpec load_channel_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open channel spec '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_channel_spec(ss.str());
}

std::string dump_channel_spec(const ChannelSpec& spec) { return to_json(spec).dump(2) + "\n"; }

void save_channel_spec(const ChannelSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError(fmt::format("cannot write '{}'", path));
  out << dump_channel_spec(spec);
  if (!out) throw InputError(fmt::format("failed writing '{}'", path));
}

ChannelSpec make_spec(const FsMac& channel) { return {channel, std::nullopt, std::nullopt}; }

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

std::string channel_hash(const ChannelSpec& spec) { return fnv1a_hex(to_json(spec).dump()); }

}  // namespace dimac
