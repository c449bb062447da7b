#pragma once

// Versioned text format for length spectra: '#key value' header lines, a
// column header, then one CSV row per conjugacy class. Doubles are written
// with 17 significant digits so a save/load round trip is exact.

#include <iosfwd>
#include <string>

#include "orbitzeta/spectrum.hpp"

namespace orbitzeta {

class SchottkyGroup;

void write_spectrum(std::ostream& os, const LengthSpectrum& spectrum);
// Throws format_error on malformed input.
LengthSpectrum read_spectrum(std::istream& is);

// Writes to a temporary file next to path, then renames over it.
void save_spectrum(const LengthSpectrum& spectrum, const std::string& path);
LengthSpectrum load_spectrum(const std::string& path);
// Also checks the stored digest against the group: digest_mismatch otherwise.
LengthSpectrum load_spectrum(const std::string& path, const SchottkyGroup& group);

// Shared helper for atomic replace-on-write of any text file.
void atomic_write(const std::string& path, const std::string& contents);

}  // namespace orbitzeta
