#pragma once

#include <string>

#include "bolforge/certificate.hpp"
#include "bolforge/loopcore.hpp"

namespace bolforge {

/// LTAB text format: line 1 "ltab 1", line 2 the order n, then n lines of
/// n space-separated 0-based indices (row i, column j = index of x_i o
/// x_j). Element 0 is the unit. Canonical: rebuilding with the same
/// configuration yields byte-identical files.
void ltab_write(const LoopTable &t, const std::string &path);
LoopTable ltab_read(const std::string &path);

std::string ltab_to_string(const LoopTable &t);

void write_text_file(const std::string &path, const std::string &content);

} // namespace bolforge
