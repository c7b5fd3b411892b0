#pragma once

#include <optional>
#include <string>

#include "lazydec/lazy_decoder.h"
#include "lazydec/mwpm_decoder.h"
#include "lazydec/union_find_decoder.h"

namespace lazydec {

enum class DecoderKind { Lazy, UnionFind, Mwpm, LazyThenUnionFind, LazyThenMwpm };

std::string to_string(DecoderKind kind);
/// Accepts the CLI spellings: lazy, uf, mwpm, lazy+uf, lazy+mwpm.
std::optional<DecoderKind> parse_decoder_kind(const std::string& text);
bool uses_lazy(DecoderKind kind);

struct DecodeRecord {
  Correction correction;
  bool has_correction = false;  // false only when a lone lazy stage fails
  bool used_fallback = false;
  double wall_time = 0.0;       // seconds spent in the decode call
  LazyOutcome lazy;             // meaningful when uses_lazy(kind)
};

/// A decoder of a given kind bound to one graph. Composite kinds run the lazy stage first and
/// call the full decoder on the original syndrome only when it fails.
class HierarchicalDecoder {
 public:
  HierarchicalDecoder(const DecodingGraph& graph, DecoderKind kind, LazyOptions lazy_options = {});

  DecodeRecord decode(const Syndrome& syndrome);
  DecoderKind kind() const { return kind_; }

 private:
  DecoderKind kind_;
  LazyDecoder lazy_;
  std::optional<UnionFindDecoder> uf_;
  std::optional<MwpmDecoder> mwpm_;
};

DecodeRecord hierarchical_decode(const DecodingGraph& graph, const Syndrome& syndrome, DecoderKind kind);

}  // namespace lazydec
