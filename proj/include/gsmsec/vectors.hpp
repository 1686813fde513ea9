/**@file
	@brief Embedded conformance test data for KASUMI, f8, f9 and A5/3,
	used by the self-test and by the test suites.

	Entries with ids ending in "-set-*" carry 3GPP conformance data
	(TS 35.203 / TS 55.217 test sets). Entries with ids containing
	"-pin-" are pinned regression vectors frozen from a build that
	passed the conformance data; they widen coverage to multi-block
	chaining and bit-granular tails.

	Convention: an empty plaintext_hex in an F8Vector means an all-zero
	plaintext, so ciphertext_hex is the raw keystream.
*/

#ifndef GSMSEC_VECTORS_H
#define GSMSEC_VECTORS_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace gsmsec::vectors {

struct KasumiBlockVector {
	std::string_view id;
	std::string_view key_hex;         // 32 hex digits
	std::string_view plaintext_hex;   // 16 hex digits
	std::string_view ciphertext_hex;  // 16 hex digits
};

struct F8Vector {
	std::string_view id;
	std::string_view ck_hex;
	uint32_t count;
	uint8_t bearer;
	uint8_t direction;
	size_t length_bits;
	std::string_view plaintext_hex;
	std::string_view ciphertext_hex;
};

struct F9Vector {
	std::string_view id;
	std::string_view ik_hex;
	uint32_t count;
	uint32_t fresh;
	uint8_t direction;
	size_t length_bits;
	std::string_view message_hex;
	uint32_t mac;
};

struct A53Vector {
	std::string_view id;
	std::string_view kc_hex;  // 16 hex digits
	uint32_t frame;           // 22-bit COUNT
	std::string_view block1_hex;  // 15 octets, low 6 bits of the last zero
	std::string_view block2_hex;
};

std::span<const KasumiBlockVector> kasumi_block_vectors();
std::span<const F8Vector> f8_vectors();
std::span<const F9Vector> f9_vectors();
std::span<const A53Vector> a53_vectors();

}  // namespace gsmsec::vectors

#endif
