// gsmsec - command line front end for the KASUMI toolkit: block cipher,
// f8/f9/A5-3 modes, GSM and UMTS authentication simulators, MM codec.
//
// Exit codes: 0 success, 1 self-test failure, 2 argument or format
// error, 3 scenario semantic error, 4 decode error. Binary I/O is
// uppercase hex without separators.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gsmsec/auth_gsm.hpp"
#include "gsmsec/auth_umts.hpp"
#include "gsmsec/kasumi.hpp"
#include "gsmsec/mm_codec.hpp"
#include "gsmsec/modes.hpp"
#include "gsmsec/scenario.hpp"
#include "gsmsec/selftest.hpp"

namespace {

using namespace gsmsec;

struct UsageError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

Bytes hex_exact(const std::string& text, size_t octets, const char* what) {
	auto bytes = from_hex(text);
	if (!bytes || bytes->size() != octets)
		throw UsageError(std::string(what) + " must be " + std::to_string(octets * 2) +
						 " hex digits");
	return *bytes;
}

uint32_t hex_u32(const std::string& text, const char* what) {
	return load_be32(hex_exact(text, 4, what).data());
}

int run_selftest() {
	auto report = selftest::run();
	for (const auto& suite : report.suites) {
		std::printf("suite %-22s %d/%d %s\n", suite.name.c_str(), suite.passed,
					suite.passed + suite.failed, suite.failed ? "FAILED" : "ok");
		for (const auto& id : suite.failed_ids) std::printf("  failed: %s\n", id.c_str());
	}
	std::printf("SELFTEST %s\n", report.all_passed() ? "PASS" : "FAIL");
	return report.all_passed() ? 0 : 1;
}

int run_sim(const std::string& protocol, const std::string& scenario_path,
			const std::string& trace_path, std::optional<uint64_t> seed_override) {
	sim::ScenarioScript scenario = sim::load_scenario(scenario_path);
	auto want = protocol == "gsm" ? sim::ScenarioScript::Protocol::Gsm
								  : sim::ScenarioScript::Protocol::Umts;
	if (scenario.protocol != want)
		throw UsageError("scenario file declares a different protocol than '" + protocol + "'");
	if (seed_override) scenario.seed = *seed_override;

	std::vector<sim::TraceEvent> trace;
	sim::VerdictKind verdict;
	if (want == sim::ScenarioScript::Protocol::Gsm) {
		auto result = gsm::run_gsm_authentication(scenario);
		trace = std::move(result.trace);
		verdict = result.verdict;
	} else {
		auto result = umts::run_umts_aka(scenario);
		trace = std::move(result.trace);
		verdict = result.verdict;
	}

	std::string text = sim::format_trace(trace);
	if (trace_path.empty()) {
		std::fputs(text.c_str(), stdout);
	} else {
		std::ofstream out(trace_path, std::ios::binary);
		if (!out) throw UsageError("cannot write trace file: " + trace_path);
		out << text;
	}
	std::printf("VERDICT: %s\n", sim::verdict_string(verdict).c_str());
	return 0;
}

int print_decoded(const std::string& hex) {
	auto pdu = from_hex(hex);
	if (!pdu) throw UsageError("mm decode expects hex input");
	auto result = mm::decode(*pdu);
	if (auto* failure = std::get_if<mm::DecodeFailure>(&result)) {
		std::fprintf(stderr, "decode error: %s\n",
					 std::string(mm::decode_error_name(failure->kind)).c_str());
		return 4;
	}
	const auto& msg = std::get<mm::DecodedMessage>(result);
	std::printf("pd=0101 (MM) skip=0000 type=0x%02X\n", msg.header.message_type_octet);
	std::printf("%s\n", mm::describe(msg).c_str());
	return 0;
}

}  // namespace

int main(int argc, char** argv) {
	CLI::App app{"KASUMI-based GSM/UMTS security toolkit"};
	app.require_subcommand(1);
	int exit_code = 0;

	// block encrypt|decrypt
	auto* block = app.add_subcommand("block", "KASUMI single-block operations");
	block->require_subcommand(1);
	std::string block_key, block_data;
	for (const char* op : {"encrypt", "decrypt"}) {
		auto* sub = block->add_subcommand(op, op);
		sub->add_option("--key", block_key, "128-bit key, 32 hex digits")->required();
		sub->add_option("--data", block_data, "64-bit block, 16 hex digits")->required();
		bool decrypt = std::string(op) == "decrypt";
		sub->callback([&, decrypt] {
			auto key = kasumi::CipherKey::from_bytes(hex_exact(block_key, 16, "--key"));
			auto data = kasumi::Block64::from_bytes(hex_exact(block_data, 8, "--data").data());
			auto out = decrypt ? kasumi::decrypt_block(data, key) : kasumi::encrypt_block(data, key);
			std::printf("%s\n", out.hex().c_str());
		});
	}

	// keystream f8|a53
	auto* keystream = app.add_subcommand("keystream", "f8 and A5/3 keystream generation");
	keystream->require_subcommand(1);
	std::string ks_key, ks_count, ks_kc;
	unsigned ks_bearer = 0, ks_direction = 0;
	size_t ks_length = 0;
	uint32_t ks_frame = 0;
	{
		auto* f8 = keystream->add_subcommand("f8", "UEA1 confidentiality keystream");
		f8->add_option("--key", ks_key, "CK, 32 hex digits")->required();
		f8->add_option("--count", ks_count, "COUNT, 8 hex digits")->required();
		f8->add_option("--bearer", ks_bearer, "bearer, 0..31")->required();
		f8->add_option("--direction", ks_direction, "0 or 1")->required();
		f8->add_option("--length", ks_length, "keystream bits, 1..20000")->required();
		f8->callback([&] {
			modes::KeystreamRequest req{kasumi::CipherKey::from_bytes(hex_exact(ks_key, 16, "--key")),
										hex_u32(ks_count, "--count"),
										static_cast<uint8_t>(ks_bearer),
										static_cast<uint8_t>(ks_direction), ks_length};
			std::printf("%s\n", to_hex(modes::f8_keystream(req).bytes).c_str());
		});
	}
	{
		auto* a53 = keystream->add_subcommand("a53", "GSM A5/3 frame keystream");
		a53->add_option("--kc", ks_kc, "Kc, 16 hex digits")->required();
		a53->add_option("--frame", ks_frame, "22-bit frame number")->required();
		a53->callback([&] {
			auto ks = modes::a53_keystream(load_be64(hex_exact(ks_kc, 8, "--kc").data()), ks_frame);
			std::printf("BLOCK1 %s\n", to_hex(ks.block1.bytes).c_str());
			std::printf("BLOCK2 %s\n", to_hex(ks.block2.bytes).c_str());
		});
	}

	// mac f9
	auto* mac = app.add_subcommand("mac", "f9 integrity MAC");
	mac->require_subcommand(1);
	std::string mac_key, mac_count, mac_fresh, mac_message;
	unsigned mac_direction = 0;
	std::optional<size_t> mac_bits;
	{
		auto* f9 = mac->add_subcommand("f9", "UIA1 32-bit MAC");
		f9->add_option("--key", mac_key, "IK, 32 hex digits")->required();
		f9->add_option("--count", mac_count, "COUNT, 8 hex digits")->required();
		f9->add_option("--fresh", mac_fresh, "FRESH, 8 hex digits")->required();
		f9->add_option("--direction", mac_direction, "0 or 1")->required();
		f9->add_option("--message", mac_message, "message hex (may be empty)");
		f9->add_option("--bits", mac_bits, "message bit length (default: 8 * octets)");
		f9->callback([&] {
			auto msg = from_hex(mac_message);
			if (!msg) throw UsageError("--message must be hex");
			modes::MacRequest req;
			req.ik = kasumi::CipherKey::from_bytes(hex_exact(mac_key, 16, "--key"));
			req.count = hex_u32(mac_count, "--count");
			req.fresh = hex_u32(mac_fresh, "--fresh");
			req.direction = static_cast<uint8_t>(mac_direction);
			req.message = *msg;
			req.bit_length = mac_bits.value_or(msg->size() * 8);
			std::printf("%s\n", to_hex32(modes::f9_mac(req)).c_str());
		});
	}

	// sim gsm|umts
	auto* simulate = app.add_subcommand("sim", "run a protocol scenario");
	simulate->require_subcommand(1);
	std::string sim_scenario, sim_trace;
	std::optional<uint64_t> sim_seed;
	for (const char* protocol : {"gsm", "umts"}) {
		auto* sub = simulate->add_subcommand(protocol, protocol);
		sub->add_option("scenario", sim_scenario, "scenario file path")->required();
		sub->add_option("--trace", sim_trace, "trace output path (default: stdout)");
		sub->add_option("--seed", sim_seed, "override the scenario seed");
		std::string proto = protocol;
		sub->callback([&, proto] { exit_code = run_sim(proto, sim_scenario, sim_trace, sim_seed); });
	}

	// mm decode|encode
	auto* mm_cmd = app.add_subcommand("mm", "MM security message codec");
	mm_cmd->require_subcommand(1);
	std::string mm_hex;
	{
		auto* decode = mm_cmd->add_subcommand("decode", "decode a PDU");
		decode->add_option("pdu", mm_hex, "PDU hex")->required();
		decode->callback([&] { exit_code = print_decoded(mm_hex); });
	}
	{
		auto* encode = mm_cmd->add_subcommand("encode", "encode a message");
		encode->require_subcommand(1);
		static std::string cksn_rand, autn, sres, ext, identity, imsi, tmsi, lai;
		static unsigned cksn = 0, id_type = 1;
		static bool nsd = false;

		auto emit = [](const mm::SecurityMessage& msg, bool with_nsd) {
			std::printf("%s\n", to_hex(mm::encode(msg, with_nsd ? std::optional<bool>(true)
																: std::nullopt))
								   .c_str());
		};
		auto identity_octets = []() -> Bytes {
			int given = !identity.empty() + !imsi.empty() + !tmsi.empty();
			if (given != 1) throw UsageError("give exactly one of --identity, --imsi, --tmsi");
			if (!identity.empty()) {
				auto raw = from_hex(identity);
				if (!raw || raw->empty() || raw->size() > 9)
					throw UsageError("--identity must be 1..9 octets of hex");
				return *raw;
			}
			if (!imsi.empty()) return mm::mobile_identity_from_imsi(imsi);
			return mm::mobile_identity_from_tmsi(load_be32(hex_exact(tmsi, 4, "--tmsi").data()));
		};

		auto* request = encode->add_subcommand("auth-request", "AUTHENTICATION REQUEST");
		request->add_option("--cksn", cksn, "key sequence number, 0..7");
		request->add_option("--rand", cksn_rand, "RAND, 32 hex digits")->required();
		request->add_option("--autn", autn, "AUTN, 32 hex digits");
		request->callback([&] {
			mm::AuthenticationRequest msg;
			msg.cksn = static_cast<uint8_t>(cksn);
			auto rand = hex_exact(cksn_rand, 16, "--rand");
			std::copy(rand.begin(), rand.end(), msg.rand.begin());
			if (!autn.empty()) {
				auto octets = hex_exact(autn, 16, "--autn");
				std::array<uint8_t, 16> value{};
				std::copy(octets.begin(), octets.end(), value.begin());
				msg.autn = value;
			}
			emit(msg, false);
		});

		auto* response = encode->add_subcommand("auth-response", "AUTHENTICATION RESPONSE");
		response->add_option("--sres", sres, "SRES, 8 hex digits")->required();
		response->add_option("--ext", ext, "extended response hex, 1..12 octets");
		response->add_flag("--nsd", nsd, "set the N(SD) bit");
		response->callback([&] {
			mm::AuthenticationResponse msg;
			auto value = hex_exact(sres, 4, "--sres");
			std::copy(value.begin(), value.end(), msg.sres.begin());
			if (!ext.empty()) {
				auto octets = from_hex(ext);
				if (!octets) throw UsageError("--ext must be hex");
				msg.extended_res = *octets;
			}
			emit(msg, nsd);
		});

		encode->add_subcommand("auth-reject", "AUTHENTICATION REJECT")->callback([&] {
			emit(mm::AuthenticationReject{}, false);
		});

		auto* id_request = encode->add_subcommand("identity-request", "IDENTITY REQUEST");
		id_request->add_option("--type", id_type, "identity type, 0..7 (1 IMSI, 4 TMSI)");
		id_request->callback([&] { emit(mm::IdentityRequest{static_cast<uint8_t>(id_type)}, false); });

		auto* id_response = encode->add_subcommand("identity-response", "IDENTITY RESPONSE");
		id_response->add_option("--identity", identity, "raw mobile identity hex");
		id_response->add_option("--imsi", imsi, "IMSI, 15 digits");
		id_response->add_option("--tmsi", tmsi, "TMSI, 8 hex digits");
		id_response->add_flag("--nsd", nsd, "set the N(SD) bit");
		id_response->callback([&] { emit(mm::IdentityResponse{identity_octets()}, nsd); });

		auto* realloc_cmd = encode->add_subcommand("tmsi-realloc-command", "TMSI REALLOCATION COMMAND");
		realloc_cmd->add_option("--lai", lai, "LAI, 10 hex digits")->required();
		realloc_cmd->add_option("--identity", identity, "raw mobile identity hex");
		realloc_cmd->add_option("--imsi", imsi, "IMSI, 15 digits");
		realloc_cmd->add_option("--tmsi", tmsi, "TMSI, 8 hex digits");
		realloc_cmd->callback([&] {
			mm::TmsiReallocationCommand msg;
			auto octets = hex_exact(lai, 5, "--lai");
			std::copy(octets.begin(), octets.end(), msg.lai.begin());
			msg.mobile_identity = identity_octets();
			emit(msg, false);
		});

		encode->add_subcommand("tmsi-realloc-complete", "TMSI REALLOCATION COMPLETE")
			->callback([&] { emit(mm::TmsiReallocationComplete{}, nsd); });
	}

	app.add_subcommand("selftest", "run the embedded vector and codec self-test")
		->callback([&] { exit_code = run_selftest(); });

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		int code = app.exit(e);
		return code == 0 ? 0 : 2;
	} catch (const sim::UnknownSubscriber& e) {
		std::fprintf(stderr, "error: %s\n", e.what());
		return 3;
	} catch (const sim::StateViolation& e) {
		std::fprintf(stderr, "error: %s\n", e.what());
		return 3;
	} catch (const sim::ScenarioParseError& e) {
		std::fprintf(stderr, "error: %s\n", e.what());
		return 2;
	} catch (const UsageError& e) {
		std::fprintf(stderr, "error: %s\n", e.what());
		return 2;
	} catch (const std::invalid_argument& e) {
		std::fprintf(stderr, "error: %s\n", e.what());
		return 2;
	} catch (const std::out_of_range& e) {
		std::fprintf(stderr, "error: %s\n", e.what());
		return 2;
	}
	return exit_code;
}
