#include "gsmsec/selftest.hpp"

#include "gsmsec/kasumi.hpp"
#include "gsmsec/mm_codec.hpp"
#include "gsmsec/modes.hpp"
#include "gsmsec/vectors.hpp"

namespace gsmsec::selftest {

namespace {

class Suite {
 public:
	explicit Suite(std::string name) { result_.name = std::move(name); }

	void check(const std::string& id, bool ok) {
		if (ok) {
			++result_.passed;
		} else {
			++result_.failed;
			result_.failed_ids.push_back(id);
		}
	}

	SuiteResult take() { return std::move(result_); }

 private:
	SuiteResult result_;
};

SuiteResult run_sboxes() {
	Suite suite("sbox-permutations");
	const auto& tables = kasumi::standard_sboxes();
	suite.check("s7s9-permutation", kasumi::tables_are_permutations(tables));

	kasumi::SboxTables corrupted = tables;
	corrupted.s9[7] = corrupted.s9[8];
	suite.check("corruption-detectable", !kasumi::tables_are_permutations(corrupted));
	return suite.take();
}

SuiteResult run_kasumi_blocks() {
	Suite suite("kasumi-blocks");
	for (const auto& v : vectors::kasumi_block_vectors()) {
		auto key = kasumi::CipherKey::from_hex(v.key_hex);
		auto pt = kasumi::Block64::from_hex(v.plaintext_hex);
		auto ct = kasumi::Block64::from_hex(v.ciphertext_hex);
		suite.check(std::string(v.id) + "-enc", kasumi::encrypt_block(pt, key) == ct);
		suite.check(std::string(v.id) + "-dec", kasumi::decrypt_block(ct, key) == pt);
	}
	return suite.take();
}

SuiteResult run_key_schedule() {
	Suite suite("kasumi-key-schedule");
	auto keys = kasumi::derive_round_keys(kasumi::CipherKey{});
	suite.check("zero-key-kl11", keys.round(1).kl1 == 0x0000);
	suite.check("zero-key-kl12", keys.round(1).kl2 == 0x89AB);
	suite.check("zero-key-ko11", keys.round(1).ko1 == 0x0000);
	suite.check("zero-key-ki11", keys.round(1).ki1 == 0xFEDC);
	suite.check("zero-key-ki12", keys.round(1).ki2 == 0xCDEF);
	suite.check("zero-key-ki13", keys.round(1).ki3 == 0x3210);
	suite.check("zero-key-ko81", keys.round(8).ko1 == 0x0000);
	return suite.take();
}

SuiteResult run_f8() {
	Suite suite("f8");
	for (const auto& v : vectors::f8_vectors()) {
		modes::KeystreamRequest req{kasumi::CipherKey::from_hex(v.ck_hex), v.count, v.bearer,
									v.direction, v.length_bits};
		BitString ks = modes::f8_keystream(req);
		Bytes pt = v.plaintext_hex.empty() ? Bytes((v.length_bits + 7) / 8, 0)
										   : must_from_hex(v.plaintext_hex);
		suite.check(std::string(v.id), to_hex(xor_keystream(pt, ks)) == v.ciphertext_hex);
	}
	return suite.take();
}

SuiteResult run_f9() {
	Suite suite("f9");
	for (const auto& v : vectors::f9_vectors()) {
		modes::MacRequest req;
		req.ik = kasumi::CipherKey::from_hex(v.ik_hex);
		req.count = v.count;
		req.fresh = v.fresh;
		req.direction = v.direction;
		req.message = must_from_hex(v.message_hex);
		req.bit_length = v.length_bits;
		suite.check(std::string(v.id), modes::f9_mac(req) == v.mac);
	}
	return suite.take();
}

SuiteResult run_a53() {
	Suite suite("a53");
	for (const auto& v : vectors::a53_vectors()) {
		auto kc = must_from_hex(v.kc_hex);
		auto ks = modes::a53_keystream(load_be64(kc.data()), v.frame);
		suite.check(std::string(v.id), to_hex(ks.block1.bytes) == v.block1_hex &&
										   to_hex(ks.block2.bytes) == v.block2_hex);
	}
	return suite.take();
}

SuiteResult run_mm_codec() {
	Suite suite("mm-codec");

	const std::vector<std::pair<std::string, mm::SecurityMessage>> corpus = {
		{"auth-reject", mm::AuthenticationReject{}},
		{"auth-request",
		 mm::AuthenticationRequest{3, {0xA0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15},
								   std::nullopt}},
		{"auth-request-autn",
		 mm::AuthenticationRequest{0, {}, std::array<uint8_t, 16>{0xFF, 0xEE}}},
		{"auth-response", mm::AuthenticationResponse{{0xDE, 0xAD, 0xBE, 0xEF}, std::nullopt}},
		{"auth-response-ext",
		 mm::AuthenticationResponse{{1, 2, 3, 4}, Bytes{9, 8, 7, 6}}},
		{"identity-request", mm::IdentityRequest{4}},
		{"identity-response", mm::IdentityResponse{mm::mobile_identity_from_tmsi(0x1A2B3C4D)}},
		{"tmsi-realloc-command",
		 mm::TmsiReallocationCommand{{0x00, 0xF1, 0x10, 0x00, 0x01},
									 mm::mobile_identity_from_imsi("001010123456789")}},
		{"tmsi-realloc-complete", mm::TmsiReallocationComplete{}},
	};
	for (const auto& [id, msg] : corpus) {
		Bytes wire = mm::encode(msg);
		auto decoded = mm::decode(wire);
		bool ok = false;
		if (auto* d = std::get_if<mm::DecodedMessage>(&decoded))
			ok = d->body == msg && mm::encode(d->body, d->n_sd) == wire;
		suite.check("roundtrip-" + id, ok);
	}

	// The two-octet messages decode straight off the type table.
	auto reject = mm::decode(must_from_hex("0511"));
	suite.check("decode-0511",
				std::holds_alternative<mm::DecodedMessage>(reject) &&
					std::holds_alternative<mm::AuthenticationReject>(
						std::get<mm::DecodedMessage>(reject).body));
	auto not_mm = mm::decode(must_from_hex("0612"));
	suite.check("reject-0612",
				std::holds_alternative<mm::DecodeFailure>(not_mm) &&
					std::get<mm::DecodeFailure>(not_mm).kind == mm::DecodeError::NotMmPdu);
	return suite.take();
}

}  // namespace

Report run() {
	Report report;
	report.suites.push_back(run_sboxes());
	report.suites.push_back(run_kasumi_blocks());
	report.suites.push_back(run_key_schedule());
	report.suites.push_back(run_f8());
	report.suites.push_back(run_f9());
	report.suites.push_back(run_a53());
	report.suites.push_back(run_mm_codec());
	return report;
}

}  // namespace gsmsec::selftest
