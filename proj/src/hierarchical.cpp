#include "lazydec/hierarchical.h"

#include <chrono>

namespace lazydec {

std::string to_string(DecoderKind kind) {
  switch (kind) {
    case DecoderKind::Lazy: return "lazy";
    case DecoderKind::UnionFind: return "uf";
    case DecoderKind::Mwpm: return "mwpm";
    case DecoderKind::LazyThenUnionFind: return "lazy+uf";
    case DecoderKind::LazyThenMwpm: return "lazy+mwpm";
  }
  return "?";
}

std::optional<DecoderKind> parse_decoder_kind(const std::string& text) {
  for (DecoderKind k : {DecoderKind::Lazy, DecoderKind::UnionFind, DecoderKind::Mwpm,
                        DecoderKind::LazyThenUnionFind, DecoderKind::LazyThenMwpm}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

bool uses_lazy(DecoderKind kind) {
  return kind == DecoderKind::Lazy || kind == DecoderKind::LazyThenUnionFind ||
         kind == DecoderKind::LazyThenMwpm;
}

HierarchicalDecoder::HierarchicalDecoder(const DecodingGraph& graph, DecoderKind kind,
                                         LazyOptions lazy_options)
    : kind_(kind), lazy_(graph, lazy_options) {
  if (kind == DecoderKind::UnionFind || kind == DecoderKind::LazyThenUnionFind) uf_.emplace(graph);
  if (kind == DecoderKind::Mwpm || kind == DecoderKind::LazyThenMwpm) mwpm_.emplace(graph);
}

DecodeRecord HierarchicalDecoder::decode(const Syndrome& syndrome) {
  const auto start = std::chrono::steady_clock::now();
  DecodeRecord rec;
  bool need_full = true;
  if (uses_lazy(kind_)) {
    rec.lazy = lazy_.decode(syndrome);
    if (rec.lazy.success()) {
      rec.correction = rec.lazy.correction;
      rec.has_correction = true;
      need_full = false;
    } else if (kind_ == DecoderKind::Lazy) {
      need_full = false;
    } else {
      rec.used_fallback = true;
    }
  }
  if (need_full) {
    rec.correction = uf_ ? uf_->decode(syndrome) : mwpm_->decode(syndrome).correction;
    rec.has_correction = true;
  }
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

DecodeRecord hierarchical_decode(const DecodingGraph& graph, const Syndrome& syndrome, DecoderKind kind) {
  HierarchicalDecoder dec(graph, kind);
  return dec.decode(syndrome);
}

}  // namespace lazydec
