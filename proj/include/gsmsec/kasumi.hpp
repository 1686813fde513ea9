/**@file
	@brief KASUMI block cipher, 3GPP TS 35.202: key schedule, FL/FO/FI,
	8-round encryption and decryption.

	Conventions, stated once and used everywhere:
	- Keys and blocks enter as octet sequences; 16/32/64-bit words are
	  assembled big-endian, so printed test vectors read off directly.
	- Within a word, bit 1 is the least significant bit; ROL acts on
	  16-bit words.
	- A 64-bit block splits into halves L (most significant 32 bits) and
	  R (least significant). Round 1 feeds L through FL then FO and XORs
	  the result into R; this is the half ordering that reproduces the
	  published test vectors.
*/

#ifndef GSMSEC_KASUMI_H
#define GSMSEC_KASUMI_H

#include <array>
#include <string_view>

#include "gsmsec/bytes.hpp"

namespace gsmsec::kasumi {

/** The S7/S9 substitution tables used inside FI. The standard tables are
	permutations of 0..127 and 0..511; the self-test verifies this. */
struct SboxTables {
	std::array<uint16_t, 128> s7;
	std::array<uint16_t, 512> s9;
};

const SboxTables& standard_sboxes();
bool tables_are_permutations(const SboxTables& tables);

/** 128-bit cipher key, viewed as sub-keys K1..K8 (K1 most significant). */
struct CipherKey {
	std::array<uint8_t, 16> octets{};

	static CipherKey from_bytes(std::span<const uint8_t> data);  // must be 16 octets
	static CipherKey from_hex(std::string_view hex);             // must be 32 hex digits

	/// K_i for i in 1..8.
	uint16_t subkey(int i) const { return load_be16(octets.data() + 2 * (i - 1)); }

	std::string hex() const { return to_hex(octets); }
	bool operator==(const CipherKey&) const = default;
};

/** The eight 16-bit round keys of one round. */
struct RoundKeys {
	uint16_t kl1, kl2;
	uint16_t ko1, ko2, ko3;
	uint16_t ki1, ki2, ki3;
};

struct RoundKeySet {
	std::array<RoundKeys, 8> rounds;

	/// Round index i in 1..8.
	const RoundKeys& round(int i) const { return rounds[i - 1]; }
};

/** K'_i = K_i ^ C_i with the fixed 128-bit key-modifier constant
	0x0123456789ABCDEFFEDCBA9876543210, then per round i (indices wrap
	into 1..8):
	  KL_{i,1} = ROL(K_i, 1)        KL_{i,2} = K'_{i+2}
	  KO_{i,1} = ROL(K_{i+1}, 5)    KO_{i,2} = ROL(K_{i+5}, 8)
	  KO_{i,3} = ROL(K_{i+6}, 13)
	  KI_{i,1} = K'_{i+4}           KI_{i,2} = K'_{i+3}
	  KI_{i,3} = K'_{i+7} */
RoundKeySet derive_round_keys(const CipherKey& key);

/** One 64-bit block; value = L || R. */
struct Block64 {
	uint64_t value = 0;

	uint32_t left() const { return static_cast<uint32_t>(value >> 32); }
	uint32_t right() const { return static_cast<uint32_t>(value); }

	static Block64 from_halves(uint32_t l, uint32_t r) {
		return Block64{(static_cast<uint64_t>(l) << 32) | r};
	}
	static Block64 from_bytes(const uint8_t* p) { return Block64{load_be64(p)}; }
	static Block64 from_hex(std::string_view hex);  // must be 16 hex digits

	void to_bytes(uint8_t* p) const { store_be64(p, value); }
	std::string hex() const { return to_hex64(value); }

	bool operator==(const Block64&) const = default;
};

/** FI: the 9/7-bit irregular Feistel step.
	  r1 = S9(l0) ^ (00 || r0)      l1 = S7(r0) ^ LS7(r1)
	  (l2 || r2) = KI ^ (l1 || r1)
	  r3 = S9(r2) ^ (00 || l2)      l3 = S7(l2) ^ LS7(r3)
	returns l3 || r3. */
uint16_t fi(uint16_t x, uint16_t ki, const SboxTables& tables = standard_sboxes());

/** FL: with x = l || r,
	  r' = ROL(l & kl1, 1) ^ r
	  l' = ROL(r' | kl2, 1) ^ l
	returns l' || r'. */
uint32_t fl(uint32_t x, uint16_t kl1, uint16_t kl2);

/** FO: three inner rounds j = 1..3 of
	  r_j = FI(l_{j-1} ^ KO_j, KI_j) ^ r_{j-1};  l_j = r_{j-1}
	returns l3 || r3. */
uint32_t fo(uint32_t x, const std::array<uint16_t, 3>& ko, const std::array<uint16_t, 3>& ki,
			const SboxTables& tables = standard_sboxes());

/** Eight Feistel rounds; odd rounds apply FO(FL(.)), even rounds
	FL(FO(.)), with L_i = F_i(L_{i-1}) ^ R_{i-1} and R_i = L_{i-1}. */
Block64 encrypt_block(Block64 plaintext, const RoundKeySet& keys);
Block64 encrypt_block(Block64 plaintext, const CipherKey& key);

/** Exact inverse: rounds in reverse order with the same round keys. */
Block64 decrypt_block(Block64 ciphertext, const RoundKeySet& keys);
Block64 decrypt_block(Block64 ciphertext, const CipherKey& key);

}  // namespace gsmsec::kasumi

#endif
