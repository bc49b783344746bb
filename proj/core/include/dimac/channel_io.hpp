#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "dimac/channels.hpp"

namespace dimac {

/// A channel loaded from a JSON spec file.
///
/// Schema:
///   {
///     "alphabets": {"s": S, "x1": X1, "x2": X2, "y": Y},
///     "kernel": [...],          // row-major over (x1, x2, s_prev, y, s)
///     "initial_dist": [...],    // optional pmf over states
///     "builder": {"gilbert_elliott": {...}}  // optional, one key
///   }
/// When a builder is present the kernel is generated from it (and a stored
/// kernel, if any, must agree). Builders: gilbert_elliott {alpha, beta,
/// p_good, p_bad}; additive_modq {q, transition, emission}; mux_p2p {mux,
/// p2p}; erasure {q, z_transition}; limited_isi {m, x1, x2, y, z_transition,
/// output, initial_window}.
struct ChannelSpec {
  FsMac channel;
  /// Canonical JSON of the builder object, if any.
  std::optional<std::string> builder;
  /// Noise process for additive builders (gilbert_elliott, additive_modq).
  std::optional<NoiseChain> noise;
};

/// Throws InputError on malformed specs.
ChannelSpec parse_channel_spec(std::string_view json_text);
ChannelSpec load_channel_spec(const std::string& path);

/// Canonical JSON text; doubles are written in shortest round-trip form so
/// load -> save -> load reproduces identical tensors.
std::string dump_channel_spec(const ChannelSpec& spec);
void save_channel_spec(const ChannelSpec& spec, const std::string& path);

/// Spec for a bare channel (no builder).
ChannelSpec make_spec(const FsMac& channel);

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);
/// Hash of the canonical dump.
std::string channel_hash(const ChannelSpec& spec);

}  // namespace dimac
