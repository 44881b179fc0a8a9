/* PGM image reading and writing. Binary P5 (maxval 255, pixel = byte/255)
 * is the interchange format; ASCII P2 is accepted for hand-written test
 * inputs. Color formats are rejected. Masks travel as PGM with 0 = missing
 * and 255 = observed.
 */
#pragma once

#include <string>

#include "fbfpen/tv.hpp"

namespace fbfpen {

Image read_pgm(const std::string& path);
void write_pgm(const std::string& path, const Image& img);        // P5
void write_pgm_ascii(const std::string& path, const Image& img);  // P2

Mask read_mask_pgm(const std::string& path);
void write_mask_pgm(const std::string& path, const Mask& mask);

} // namespace fbfpen
