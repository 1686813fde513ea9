/**@file
	@brief Octet-string and bit-string helpers shared by the whole toolkit.
*/

#ifndef GSMSEC_BYTES_H
#define GSMSEC_BYTES_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gsmsec {

using Bytes = std::vector<uint8_t>;

// Uppercase hex, no separators. This is the one binary text format the
// toolkit speaks at its boundaries (CLI, traces, scenario files).
std::string to_hex(std::span<const uint8_t> data);
std::string to_hex16(uint16_t v);
std::string to_hex32(uint32_t v);
std::string to_hex64(uint64_t v);

// Accepts upper or lower case; rejects odd length and non-hex characters.
std::optional<Bytes> from_hex(std::string_view text);

// Like from_hex but throws std::invalid_argument, for call sites where a
// malformed constant is a programming error.
Bytes must_from_hex(std::string_view text);

uint16_t load_be16(const uint8_t* p);
uint32_t load_be32(const uint8_t* p);
uint64_t load_be64(const uint8_t* p);
void store_be16(uint8_t* p, uint16_t v);
void store_be32(uint8_t* p, uint32_t v);
void store_be64(uint8_t* p, uint64_t v);

constexpr uint16_t rol16(uint16_t v, unsigned n) {
	n &= 15;
	return n == 0 ? v : static_cast<uint16_t>((v << n) | (v >> (16 - n)));
}

/** MSB-first bit string: bit 0 is the most significant bit of byte 0.
	Unused tail bits in the last byte are kept at zero so two equal-length
	bit strings compare equal iff their octet images match. */
struct BitString {
	Bytes bytes;
	size_t bit_count = 0;

	static BitString zeros(size_t bits);
	static BitString from_bytes(Bytes data);  // bit_count = 8 * size

	bool bit(size_t i) const;
	void set_bit(size_t i, bool v);

	// Zeroes any bits in the last byte beyond bit_count.
	void mask_tail();

	bool operator==(const BitString&) const = default;
};

// data XOR keystream over whole octets. The keystream's zeroed tail bits
// leave any padding bits of the data unchanged, matching how the test
// sets print bit-granular frames padded to octets.
Bytes xor_keystream(std::span<const uint8_t> data, const BitString& ks);

}  // namespace gsmsec

#endif
