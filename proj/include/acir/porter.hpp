#pragma once
// Porter suffix-stripping stemmer (Porter, 1980), five-step variant
// matching the author's reference implementations (including the
// bli->ble and logi->log rules).

#include <string>
#include <string_view>

namespace acir {

namespace porter_detail {

class Stemmer {
public:
    explicit Stemmer(std::string word) : b_(std::move(word)), k_(b_.size() - 1) {}

    std::string run() {
        if (b_.size() < 3) return b_;
        step1ab();
        step1c();
        step2();
        step3();
        step4();
        step5();
        return b_.substr(0, k_ + 1);
    }

private:
    std::string b_;
    size_t k_;   // index of last letter of the current word
    size_t j_ = 0;  // index of last letter of the stem, set by ends()

    bool cons(size_t i) const {
        switch (b_[i]) {
            case 'a': case 'e': case 'i': case 'o': case 'u':
                return false;
            case 'y':
                return i == 0 ? true : !cons(i - 1);
            default:
                return true;
        }
    }

    // Number of consonant-vowel sequences in [0, j_].
    int measure() const {
        int n = 0;
        size_t i = 0;
        while (true) {
            if (i > j_) return n;
            if (!cons(i)) break;
            ++i;
        }
        ++i;
        while (true) {
            while (true) {
                if (i > j_) return n;
                if (cons(i)) break;
                ++i;
            }
            ++i;
            ++n;
            while (true) {
                if (i > j_) return n;
                if (!cons(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const {
        for (size_t i = 0; i <= j_; ++i)
            if (!cons(i)) return true;
        return false;
    }

    bool double_cons(size_t i) const {
        if (i < 1) return false;
        if (b_[i] != b_[i - 1]) return false;
        return cons(i);
    }

    // consonant - vowel - consonant ending at i, final consonant not w,x,y
    bool cvc(size_t i) const {
        if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
        char c = b_[i];
        return c != 'w' && c != 'x' && c != 'y';
    }

    bool ends(std::string_view s) {
        size_t len = s.size();
        if (len > k_ + 1) return false;
        if (b_.compare(k_ + 1 - len, len, s) != 0) return false;
        j_ = k_ - len;  // may wrap when the suffix is the whole word
        return len <= k_;
    }

    void set_to(std::string_view s) {
        b_.replace(j_ + 1, k_ - j_, s);
        k_ = j_ + s.size();
    }

    void replace_if_m_gt0(std::string_view s) {
        if (measure() > 0) set_to(s);
    }

    void step1ab() {
        if (b_[k_] == 's') {
            if (ends("sses")) k_ -= 2;
            else if (ends("ies")) set_to("i");
            else if (b_[k_ - 1] != 's') --k_;
        }
        if (ends("eed")) {
            if (measure() > 0) --k_;
        } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
            k_ = j_;
            if (ends("at")) set_to("ate");
            else if (ends("bl")) set_to("ble");
            else if (ends("iz")) set_to("ize");
            else if (double_cons(k_)) {
                char c = b_[k_];
                if (c == 'l' || c == 's' || c == 'z') { /* keep */ }
                else --k_;
            } else if (measure() == 1 && cvc(k_)) {
                set_to("e");
            }
        }
    }

    void step1c() {
        if (ends("y") && vowel_in_stem()) b_[k_] = 'i';
    }

    void step2() {
        if (k_ < 1) return;
        switch (b_[k_ - 1]) {
            case 'a':
                if (ends("ational")) { replace_if_m_gt0("ate"); break; }
                if (ends("tional")) { replace_if_m_gt0("tion"); break; }
                break;
            case 'c':
                if (ends("enci")) { replace_if_m_gt0("ence"); break; }
                if (ends("anci")) { replace_if_m_gt0("ance"); break; }
                break;
            case 'e':
                if (ends("izer")) { replace_if_m_gt0("ize"); break; }
                break;
            case 'l':
                if (ends("bli")) { replace_if_m_gt0("ble"); break; }
                if (ends("alli")) { replace_if_m_gt0("al"); break; }
                if (ends("entli")) { replace_if_m_gt0("ent"); break; }
                if (ends("eli")) { replace_if_m_gt0("e"); break; }
                if (ends("ousli")) { replace_if_m_gt0("ous"); break; }
                break;
            case 'o':
                if (ends("ization")) { replace_if_m_gt0("ize"); break; }
                if (ends("ation")) { replace_if_m_gt0("ate"); break; }
                if (ends("ator")) { replace_if_m_gt0("ate"); break; }
                break;
            case 's':
                if (ends("alism")) { replace_if_m_gt0("al"); break; }
                if (ends("iveness")) { replace_if_m_gt0("ive"); break; }
                if (ends("fulness")) { replace_if_m_gt0("ful"); break; }
                if (ends("ousness")) { replace_if_m_gt0("ous"); break; }
                break;
            case 't':
                if (ends("aliti")) { replace_if_m_gt0("al"); break; }
                if (ends("iviti")) { replace_if_m_gt0("ive"); break; }
                if (ends("biliti")) { replace_if_m_gt0("ble"); break; }
                break;
            case 'g':
                if (ends("logi")) { replace_if_m_gt0("log"); break; }
                break;
        }
    }

    void step3() {
        switch (b_[k_]) {
            case 'e':
                if (ends("icate")) { replace_if_m_gt0("ic"); break; }
                if (ends("ative")) { replace_if_m_gt0(""); break; }
                if (ends("alize")) { replace_if_m_gt0("al"); break; }
                break;
            case 'i':
                if (ends("iciti")) { replace_if_m_gt0("ic"); break; }
                break;
            case 'l':
                if (ends("ical")) { replace_if_m_gt0("ic"); break; }
                if (ends("ful")) { replace_if_m_gt0(""); break; }
                break;
            case 's':
                if (ends("ness")) { replace_if_m_gt0(""); break; }
                break;
        }
    }

    void step4() {
        if (k_ < 1) return;
        switch (b_[k_ - 1]) {
            case 'a': if (ends("al")) break; return;
            case 'c': if (ends("ance")) break; if (ends("ence")) break; return;
            case 'e': if (ends("er")) break; return;
            case 'i': if (ends("ic")) break; return;
            case 'l': if (ends("able")) break; if (ends("ible")) break; return;
            case 'n':
                if (ends("ant")) break;
                if (ends("ement")) break;
                if (ends("ment")) break;
                if (ends("ent")) break;
                return;
            case 'o':
                if (ends("ion") && j_ + 1 > 0 && (b_[j_] == 's' || b_[j_] == 't')) break;
                if (ends("ou")) break;
                return;
            case 's': if (ends("ism")) break; return;
            case 't': if (ends("ate")) break; if (ends("iti")) break; return;
            case 'u': if (ends("ous")) break; return;
            case 'v': if (ends("ive")) break; return;
            case 'z': if (ends("ize")) break; return;
            default: return;
        }
        if (measure() > 1) k_ = j_;
    }

    void step5() {
        if (k_ < 1) return;
        j_ = k_;
        if (b_[k_] == 'e') {
            j_ = k_ - 1;
            int m = measure();
            if (m > 1 || (m == 1 && !cvc(k_ - 1))) --k_;
        }
        j_ = k_;
        if (b_[k_] == 'l' && double_cons(k_) && measure() > 1) --k_;
    }
};

}  // namespace porter_detail

// Stems a lowercase ASCII-alphabetic token. Words shorter than three
// letters and tokens containing non-letters are returned unchanged.
inline std::string porter_stem(const std::string& token) {
    for (char c : token)
        if (c < 'a' || c > 'z') return token;
    return porter_detail::Stemmer(token).run();
}

}  // namespace acir
