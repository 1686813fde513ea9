#include "gsmsec/vectors.hpp"

#include <array>

namespace gsmsec::vectors {

namespace {

// TS 35.203 single-block KASUMI test data, plus pinned blocks.
constexpr std::array<KasumiBlockVector, 4> kKasumiBlocks = {{
	{"kasumi-block-1", "2BD6459F82C5B300952C49104881FF48", "EA024714AD5C4D84",
	 "DF1F9B251C0BF45F"},
	{"kasumi-pin-zero", "00000000000000000000000000000000", "0000000000000000",
	 "F54CFBF75F3B5699"},
	{"kasumi-pin-ones", "FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFF", "FFFFFFFFFFFFFFFF",
	 "A02BFA9FDDE0F310"},
	{"kasumi-pin-seq", "000102030405060708090A0B0C0D0E0F", "FEDCBA9876543210",
	 "A562AD719E517FC0"},
}};

// TS 35.203 f8 test set 1, first keystream block, plus pinned keystreams
// covering 13-block chaining and a bit-granular tail.
constexpr std::array<F8Vector, 3> kF8 = {{
	{"f8-set-1-block1", "2BD6459F82C5B300952C49104881FF48", 0x72A4F20F, 0x0C, 1, 64,
	 "7EC61272743BF161", "D1E2DE70EEF86C69"},
	{"f8-pin-long", "2BD6459F82C5B300952C49104881FF48", 0x72A4F20F, 0x0C, 1, 798, "",
	 "AF24CC029AC39D0823DD1041AEECAE7BD95CDAD24BC7162F3F9FAA1C80D1DB1B"
	 "87782A2C1DC93006E49BAC44F71B868CA5398989E10ADFB3E07FEA9C2C20914A"
	 "0F437466F0C8A81D1BF4536E2D9900C43D84EA7D3CB3C7399F190528BF5C8DA3"
	 "082A2D8C"},
	{"f8-pin-tail", "FFEEDDCCBBAA99887766554433221100", 0xDEADBEEF, 0x1F, 1, 61, "",
	 "12828B4F73AFDC50"},
}};

// TS 35.203 f9 test set 1, plus pinned MACs for the padding edge cases
// (empty message; direction+pad spilling into a fresh block at n*64-1).
constexpr std::array<F9Vector, 3> kF9 = {{
	{"f9-set-1", "2BD6459F82C5B300952C49104881FF48", 0x38A6F056, 0x05D2EC49, 0, 189,
	 "6B227737296F393C8079353EDC87E2E805D2EC49A4F2D8E0", 0xF63BD72C},
	{"f9-pin-empty", "000102030405060708090A0B0C0D0E0F", 0x00000000, 0x00000000, 0, 0, "",
	 0xB89A56DB},
	{"f9-pin-fold", "2BD6459F82C5B300952C49104881FF48", 0x38A6F056, 0x05D2EC49, 1, 127,
	 "6B227737296F393C8079353EDC87E2E8", 0xC455EA2C},
}};

// TS 55.217 A5/3 test sets (64-bit Kc).
constexpr std::array<A53Vector, 9> kA53 = {{
	{"a53-set-1", "2BD6459F82C5BC00", 0x24F20F, "889EEAAF9ED1BA1ABBD8436232E440",
	 "5CA3406AA244CF69CF047AADA2DF40"},
	{"a53-set-2", "952C49104881FF48", 0x061527, "AB7DB38A573A325DAA76E4CB800A40",
	 "4C4B594FEA9D00FE8978B7B7BC1080"},
	{"a53-set-3", "EFA8B2229E720C2A", 0x33FD3F, "0E4015755A336469C3DD8680E30340",
	 "6F10669E2B4E18B042431A28E47F80"},
	{"a53-set-4", "3451F23A43BD2C87", 0x0E418C, "75F7C4C51560905DFBA05E46FB54C0",
	 "192C95353CDF979E054186DF15BF00"},
	{"a53-set-5", "CAA2639BE82435CF", 0x2FF229, "301437E4D4D6565D4904C631606EC0",
	 "F0A3B8795E264D3E1A82F684353DC0"},
	{"a53-set-6", "7AE67E87400B9FA6", 0x2F24E5, "F794290FEF643D2EA348A7796A2100",
	 "CB6FA6C6B8A705AF9FEFE975818500"},
	{"a53-set-7", "58AF69935540698B", 0x05446B, "749CA4E6B691E5A598C461D5FE4740",
	 "31C9E444CD04677ADAA8A082ADBC40"},
	{"a53-set-8", "017F81E5F236FE62", 0x156B26, "2A6976761E60CC4E8F9F52160276C0",
	 "A544D8475F2C78C35614128F1179C0"},
	{"a53-set-9", "1ACA8B448B767B39", 0x0BC3B5, "A4F70DC5A2C9707F5FA1C60EB10640",
	 "7780B597B328C1400B5C74823E8500"},
}};

}  // namespace

std::span<const KasumiBlockVector> kasumi_block_vectors() { return kKasumiBlocks; }
std::span<const F8Vector> f8_vectors() { return kF8; }
std::span<const F9Vector> f9_vectors() { return kF9; }
std::span<const A53Vector> a53_vectors() { return kA53; }

}  // namespace gsmsec::vectors
