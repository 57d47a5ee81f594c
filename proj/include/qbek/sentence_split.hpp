#pragma once

#include <string_view>
#include <vector>

#include "qbek/document.hpp"

namespace qbek {

/// Rule-based sentence splitting. A sentence ends at '.', '!' or '?' when
/// followed by whitespace and then an uppercase letter or digit; a period
/// preceded by a known abbreviation ("dr", "etc", "fig", ...) or by a
/// single letter (initials) does not end a sentence. Text without any
/// terminator is one sentence; offsets count codepoints and exclude the
/// whitespace between sentences.
std::vector<Sentence> split_sentences(std::string_view body);

}  // namespace qbek
