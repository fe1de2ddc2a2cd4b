#include "settle/gas.hpp"

namespace settle {

std::string wei_to_string(Wei w) {
    if (w == 0) return "0";
    std::string out;
    while (w > 0) {
        out.push_back((char)('0' + (int)(w % 10)));
        w /= 10;
    }
    return std::string(out.rbegin(), out.rend());
}

GasTable default_gas_table() { return GasTable{}; }

namespace {

std::string fixed_decimal(Wei value, Wei denom, int decimals) {
    // round half up at the requested precision
    Wei scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    Wei scaled = value * scale;
    Wei q = scaled / denom;
    Wei rem = scaled % denom;
    if (rem * 2 >= denom) ++q;
    std::string digits = wei_to_string(q);
    if ((int)digits.size() <= decimals) digits.insert(0, decimals + 1 - digits.size(), '0');
    digits.insert(digits.size() - decimals, ".");
    return digits;
}

} // namespace

std::string MoneyAmount::meth_string(int decimals) const {
    return fixed_decimal(wei, (Wei)1'000'000'000ULL * 1'000'000ULL, decimals); // 1e15 wei per mETH
}

std::string MoneyAmount::usd_string(std::uint64_t eth_usd, int decimals) const {
    return fixed_decimal(wei * eth_usd, (Wei)1'000'000'000ULL * 1'000'000'000ULL, decimals); // 1e18 wei per ETH
}

MoneyAmount gas_to_money(std::uint64_t gas, const MoneyRates& rates) {
    return MoneyAmount{(Wei)gas * rates.gas_price_wei};
}

} // namespace settle
