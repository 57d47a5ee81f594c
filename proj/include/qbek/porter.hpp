#pragma once

#include <string>
#include <string_view>

namespace qbek {

/// Classic Porter suffix-stripping stemmer (steps 1a through 5b), matching
/// the reference implementation's published departures (step 2 maps
/// "bli" to "ble" and adds "logi" to "log"). Expects a single lowercase
/// token; words shorter than three characters are returned unchanged.
/// Bytes outside 'a'..'z' are treated as consonants, so punctuation or
/// non-ASCII input passes through deterministically.
std::string porter_stem(std::string_view word);

}  // namespace qbek
