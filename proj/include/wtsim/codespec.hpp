// Textual code specifications used by the CLI and config files:
//
//   ecc:      "rep:k=4,r=3" | "hamming74" | "matrix:<rows>"
//   wiretap:  "coset:l=2,inner=matrix:10;01|10;01"
//             (inner generator in systematic form, identity block left of
//              '|', G4 block right; a single full literal is also accepted)
//   keystream: "ideal" | "lfsr:bits=8,taps=8,6,5,4"
//
// Matrix rows are '0'/'1' strings separated by ';'.

#pragma once

#include <string>
#include <string_view>

#include "wtsim/coding.hpp"
#include "wtsim/keystream.hpp"

namespace wtsim {

LinearBlockCode parse_ecc_spec(std::string_view spec);
WiretapCode parse_wiretap_spec(std::string_view spec);
KeystreamModel parse_keystream_spec(std::string_view spec);

// Canonical spec string for the stock coset code on (l, m): inner
// [I | G4] with G4[i][j] = 1 iff i = j mod (m-l), so no data column is
// left uncovered. For l = 2, m = 4 this is the [I2 | I2] construction.
std::string default_wiretap_spec(std::size_t l, std::size_t m);

std::string default_keystream_spec(std::size_t key_bits);

}  // namespace wtsim
