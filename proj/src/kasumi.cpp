#include "gsmsec/kasumi.hpp"

#include <stdexcept>

namespace gsmsec::kasumi {

namespace {

// TS 35.202 section 4.4: S7 is a permutation of 0..127, S9 of 0..511.
const SboxTables kStandardSboxes = {
	// S7
	{{
	 54,  50,  62,  56,  22,  34,  94,  96,  38,   6,  63,  93,   2,  18, 123,  33,
	 55, 113,  39, 114,  21,  67,  65,  12,  47,  73,  46,  27,  25, 111, 124,  81,
	 53,   9, 121,  79,  52,  60,  58,  48, 101, 127,  40, 120, 104,  70,  71,  43,
	 20, 122,  72,  61,  23, 109,  13, 100,  77,   1,  16,   7,  82,  10, 105,  98,
	117, 116,  76,  11,  89, 106,   0, 125, 118,  99,  86,  69,  30,  57, 126,  87,
	112,  51,  17,   5,  95,  14,  90,  84,  91,   8,  35, 103,  32,  97,  28,  66,
	102,  31,  26,  45,  75,   4,  85,  92,  37,  74,  80,  49,  68,  29, 115,  44,
	 64, 107, 108,  24, 110,  83,  36,  78,  42,  19,  15,  41,  88, 119,  59,   3,
	}},
	// S9
	{{
	167, 239, 161, 379, 391, 334,   9, 338,  38, 226,  48, 358, 452, 385,  90, 397,
	183, 253, 147, 331, 415, 340,  51, 362, 306, 500, 262,  82, 216, 159, 356, 177,
	175, 241, 489,  37, 206,  17,   0, 333,  44, 254, 378,  58, 143, 220,  81, 400,
	 95,   3, 315, 245,  54, 235, 218, 405, 472, 264, 172, 494, 371, 290, 399,  76,
	165, 197, 395, 121, 257, 480, 423, 212, 240,  28, 462, 176, 406, 507, 288, 223,
	501, 407, 249, 265,  89, 186, 221, 428, 164,  74, 440, 196, 458, 421, 350, 163,
	232, 158, 134, 354,  13, 250, 491, 142, 191,  69, 193, 425, 152, 227, 366, 135,
	344, 300, 276, 242, 437, 320, 113, 278,  11, 243,  87, 317,  36,  93, 496,  27,
	487, 446, 482,  41,  68, 156, 457, 131, 326, 403, 339,  20,  39, 115, 442, 124,
	475, 384, 508,  53, 112, 170, 479, 151, 126, 169,  73, 268, 279, 321, 168, 364,
	363, 292,  46, 499, 393, 327, 324,  24, 456, 267, 157, 460, 488, 426, 309, 229,
	439, 506, 208, 271, 349, 401, 434, 236,  16, 209, 359,  52,  56, 120, 199, 277,
	465, 416, 252, 287, 246,   6,  83, 305, 420, 345, 153, 502,  65,  61, 244, 282,
	173, 222, 418,  67, 386, 368, 261, 101, 476, 291, 195, 430,  49,  79, 166, 330,
	280, 383, 373, 128, 382, 408, 155, 495, 367, 388, 274, 107, 459, 417,  62, 454,
	132, 225, 203, 316, 234,  14, 301,  91, 503, 286, 424, 211, 347, 307, 140, 374,
	 35, 103, 125, 427,  19, 214, 453, 146, 498, 314, 444, 230, 256, 329, 198, 285,
	 50, 116,  78, 410,  10, 205, 510, 171, 231,  45, 139, 467,  29,  86, 505,  32,
	 72,  26, 342, 150, 313, 490, 431, 238, 411, 325, 149, 473,  40, 119, 174, 355,
	185, 233, 389,  71, 448, 273, 372,  55, 110, 178, 322,  12, 469, 392, 369, 190,
	  1, 109, 375, 137, 181,  88,  75, 308, 260, 484,  98, 272, 370, 275, 412, 111,
	336, 318,   4, 504, 492, 259, 304,  77, 337, 435,  21, 357, 303, 332, 483,  18,
	 47,  85,  25, 497, 474, 289, 100, 269, 296, 478, 270, 106,  31, 104, 433,  84,
	414, 486, 394,  96,  99, 154, 511, 148, 413, 361, 409, 255, 162, 215, 302, 201,
	266, 351, 343, 144, 441, 365, 108, 298, 251,  34, 182, 509, 138, 210, 335, 133,
	311, 352, 328, 141, 396, 346, 123, 319, 450, 281, 429, 228, 443, 481,  92, 404,
	485, 422, 248, 297,  23, 213, 130, 466,  22, 217, 283,  70, 294, 360, 419, 127,
	312, 377,   7, 468, 194,   2, 117, 295, 463, 258, 224, 447, 247, 187,  80, 398,
	284, 353, 105, 390, 299, 471, 470, 184,  57, 200, 348,  63, 204, 188,  33, 451,
	 97,  30, 310, 219,  94, 160, 129, 493,  64, 179, 263, 102, 189, 207, 114, 402,
	438, 477, 387, 122, 192,  42, 381,   5, 145, 118, 180, 449, 293, 323, 136, 380,
	 43,  66,  60, 455, 341, 445, 202, 432,   8, 237,  15, 376, 436, 464,  59, 461,
	}},
};

// Key-modifier constant 0x0123456789ABCDEFFEDCBA9876543210 as words C1..C8.
constexpr std::array<uint16_t, 8> kKeyModifier = {0x0123, 0x4567, 0x89AB, 0xCDEF,
												  0xFEDC, 0xBA98, 0x7654, 0x3210};

}  // namespace

const SboxTables& standard_sboxes() { return kStandardSboxes; }

bool tables_are_permutations(const SboxTables& tables) {
	std::array<bool, 128> seen7{};
	for (uint16_t v : tables.s7) {
		if (v > 127 || seen7[v]) return false;
		seen7[v] = true;
	}
	std::array<bool, 512> seen9{};
	for (uint16_t v : tables.s9) {
		if (v > 511 || seen9[v]) return false;
		seen9[v] = true;
	}
	return true;
}

CipherKey CipherKey::from_bytes(std::span<const uint8_t> data) {
	if (data.size() != 16) throw std::invalid_argument("cipher key must be 16 octets");
	CipherKey k;
	std::copy(data.begin(), data.end(), k.octets.begin());
	return k;
}

CipherKey CipherKey::from_hex(std::string_view hex) {
	auto bytes = gsmsec::from_hex(hex);
	if (!bytes || bytes->size() != 16)
		throw std::invalid_argument("cipher key must be 32 hex digits");
	return from_bytes(*bytes);
}

Block64 Block64::from_hex(std::string_view hex) {
	auto bytes = gsmsec::from_hex(hex);
	if (!bytes || bytes->size() != 8) throw std::invalid_argument("block must be 16 hex digits");
	return from_bytes(bytes->data());
}

RoundKeySet derive_round_keys(const CipherKey& key) {
	// 1-based views of K and K', with index wrap into 1..8.
	auto k = [&key](int i) { return key.subkey((i - 1) % 8 + 1); };
	auto kp = [&key](int i) {
		int j = (i - 1) % 8;
		return static_cast<uint16_t>(key.subkey(j + 1) ^ kKeyModifier[j]);
	};

	RoundKeySet set{};
	for (int i = 1; i <= 8; ++i) {
		RoundKeys& rk = set.rounds[i - 1];
		rk.kl1 = rol16(k(i), 1);
		rk.kl2 = kp(i + 2);
		rk.ko1 = rol16(k(i + 1), 5);
		rk.ko2 = rol16(k(i + 5), 8);
		rk.ko3 = rol16(k(i + 6), 13);
		rk.ki1 = kp(i + 4);
		rk.ki2 = kp(i + 3);
		rk.ki3 = kp(i + 7);
	}
	return set;
}

uint16_t fi(uint16_t x, uint16_t ki, const SboxTables& tables) {
	uint16_t nine = static_cast<uint16_t>(x >> 7);     // l0, 9 bits
	uint16_t seven = static_cast<uint16_t>(x & 0x7F);  // r0, 7 bits

	nine = static_cast<uint16_t>(tables.s9[nine] ^ seven);            // r1
	seven = static_cast<uint16_t>(tables.s7[seven] ^ (nine & 0x7F));  // l1

	seven ^= static_cast<uint16_t>(ki >> 9);    // l2 = l1 ^ top 7 key bits
	nine ^= static_cast<uint16_t>(ki & 0x1FF);  // r2 = r1 ^ low 9 key bits

	nine = static_cast<uint16_t>(tables.s9[nine] ^ seven);            // r3
	seven = static_cast<uint16_t>(tables.s7[seven] ^ (nine & 0x7F));  // l3

	return static_cast<uint16_t>((seven << 9) | nine);
}

uint32_t fl(uint32_t x, uint16_t kl1, uint16_t kl2) {
	uint16_t l = static_cast<uint16_t>(x >> 16);
	uint16_t r = static_cast<uint16_t>(x);
	r ^= rol16(static_cast<uint16_t>(l & kl1), 1);
	l ^= rol16(static_cast<uint16_t>(r | kl2), 1);
	return (static_cast<uint32_t>(l) << 16) | r;
}

uint32_t fo(uint32_t x, const std::array<uint16_t, 3>& ko, const std::array<uint16_t, 3>& ki,
			const SboxTables& tables) {
	uint16_t l = static_cast<uint16_t>(x >> 16);
	uint16_t r = static_cast<uint16_t>(x);
	for (int j = 0; j < 3; ++j) {
		uint16_t next_r =
			static_cast<uint16_t>(fi(static_cast<uint16_t>(l ^ ko[j]), ki[j], tables) ^ r);
		l = r;
		r = next_r;
	}
	return (static_cast<uint32_t>(l) << 16) | r;
}

namespace {

inline uint32_t round_function(int i, uint32_t half, const RoundKeys& rk) {
	const std::array<uint16_t, 3> ko = {rk.ko1, rk.ko2, rk.ko3};
	const std::array<uint16_t, 3> ki = {rk.ki1, rk.ki2, rk.ki3};
	if (i % 2 == 1) return fo(fl(half, rk.kl1, rk.kl2), ko, ki);
	return fl(fo(half, ko, ki), rk.kl1, rk.kl2);
}

}  // namespace

Block64 encrypt_block(Block64 plaintext, const RoundKeySet& keys) {
	uint32_t l = plaintext.left();
	uint32_t r = plaintext.right();
	for (int i = 1; i <= 8; ++i) {
		uint32_t next_l = round_function(i, l, keys.round(i)) ^ r;
		r = l;
		l = next_l;
	}
	return Block64::from_halves(l, r);
}

Block64 encrypt_block(Block64 plaintext, const CipherKey& key) {
	return encrypt_block(plaintext, derive_round_keys(key));
}

Block64 decrypt_block(Block64 ciphertext, const RoundKeySet& keys) {
	uint32_t l = ciphertext.left();
	uint32_t r = ciphertext.right();
	for (int i = 8; i >= 1; --i) {
		uint32_t prev_r = round_function(i, r, keys.round(i)) ^ l;
		l = r;
		r = prev_r;
	}
	return Block64::from_halves(l, r);
}

Block64 decrypt_block(Block64 ciphertext, const CipherKey& key) {
	return decrypt_block(ciphertext, derive_round_keys(key));
}

}  // namespace gsmsec::kasumi
