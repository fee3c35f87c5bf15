#include "cha/tables.hpp"

#include "cha/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

namespace cha {

namespace {

struct NamedCell {
  std::string_view preset;
  ReferenceCell cell;
};

// Benchmark values, copied verbatim with their printed precision.
constexpr NamedCell kCells[] = {
    {"2p", {2, 1, 0, 0.1, Quantity::I_r, "8076.456640"}},
    {"2p", {2, 1, 0, 0.3, Quantity::I_r, "897.5338363"}},
    {"2p", {2, 1, 0, 0.5, Quantity::I_r, "323.2227616"}},
    {"2p", {2, 1, 0, 1.0, Quantity::I_r, "80.94182631"}},
    {"2p", {2, 1, 0, 2.5, Quantity::I_r, "13.1277640"}},
    {"2p", {2, 1, 0, 5.0, Quantity::I_r, "3.494588403"}},
    {"2p", {2, 1, 0, 10.0, Quantity::I_r, "1.2520908545"}},
    {"2p", {2, 1, 1, 0.1, Quantity::I_r, "5724.072262"}},
    {"2p", {2, 1, 1, 0.3, Quantity::I_r, "633.2807489"}},
    {"2p", {2, 1, 1, 0.5, Quantity::I_r, "227.02170314"}},
    {"2p", {2, 1, 1, 1.0, Quantity::I_r, "56.182977183"}},
    {"2p", {2, 1, 1, 2.5, Quantity::I_r, "8.762099224"}},
    {"2p", {2, 1, 1, 5.0, Quantity::I_r, "2.160171627"}},
    {"2p", {2, 1, 1, 10.0, Quantity::I_r, "0.6653371253"}},
    {"2p", {2, 1, 0, 0.1, Quantity::I_p, "0.0149412219"}},
    {"2p", {2, 1, 0, 0.3, Quantity::I_p, "0.1336873908"}},
    {"2p", {2, 1, 0, 0.5, Quantity::I_p, "0.3691433181"}},
    {"2p", {2, 1, 0, 1.0, Quantity::I_p, "1.4538574615"}},
    {"2p", {2, 1, 0, 2.5, Quantity::I_p, "8.6256520961"}},
    {"2p", {2, 1, 0, 5.0, Quantity::I_p, "30.9047630304"}},
    {"2p", {2, 1, 0, 10.0, Quantity::I_p, "87.12258908648"}},
    {"2p", {2, 1, 1, 0.1, Quantity::I_p, "0.009996"}},
    {"2p", {2, 1, 1, 0.3, Quantity::I_p, "0.08930"}},
    {"2p", {2, 1, 1, 0.5, Quantity::I_p, "0.2462"}},
    {"2p", {2, 1, 1, 1.0, Quantity::I_p, "0.9657"}},
    {"2p", {2, 1, 1, 2.5, Quantity::I_p, "5.65"}},
    {"2p", {2, 1, 1, 5.0, Quantity::I_p, "19.74"}},
    {"2p", {2, 1, 1, 10.0, Quantity::I_p, "51.92"}},
    {"2p", {2, 1, 0, 0.1, Quantity::I_t, "120.672131"}},
    {"2p", {2, 1, 0, 0.3, Quantity::I_t, "119.9889567"}},
    {"2p", {2, 1, 0, 0.5, Quantity::I_t, "119.3155227"}},
    {"2p", {2, 1, 0, 1.0, Quantity::I_t, "117.67787813"}},
    {"2p", {2, 1, 0, 2.5, Quantity::I_t, "113.2355250"}},
    {"2p", {2, 1, 0, 5.0, Quantity::I_t, "107.9994264835"}},
    {"2p", {2, 1, 0, 10.0, Quantity::I_t, "109.0853970155"}},
    {"2p", {2, 1, 1, 0.1, Quantity::I_t, "57.217826"}},
    {"2p", {2, 1, 1, 0.3, Quantity::I_t, "56.55197"}},
    {"2p", {2, 1, 1, 0.5, Quantity::I_t, "55.8927"}},
    {"2p", {2, 1, 1, 1.0, Quantity::I_t, "54.2559"}},
    {"2p", {2, 1, 1, 2.5, Quantity::I_t, "49.506"}},
    {"2p", {2, 1, 1, 5.0, Quantity::I_t, "42.64"}},
    {"2p", {2, 1, 1, 10.0, Quantity::I_t, "34.54"}},
    {"3d", {3, 2, 0, 0.1, Quantity::I_r, "13287.04524"}},
    {"3d", {3, 2, 0, 0.3, Quantity::I_r, "1476.392686"}},
    {"3d", {3, 2, 0, 0.5, Quantity::I_r, "531.5410116"}},
    {"3d", {3, 2, 0, 1.0, Quantity::I_r, "132.932946"}},
    {"3d", {3, 2, 0, 2.5, Quantity::I_r, "21.327058"}},
    {"3d", {3, 2, 0, 5.0, Quantity::I_r, "5.39200335"}},
    {"3d", {3, 2, 0, 10.0, Quantity::I_r, "1.43124171"}},
    {"3d", {3, 2, 1, 0.1, Quantity::I_r, "10413.81694"}},
    {"3d", {3, 2, 1, 0.3, Quantity::I_r, "1155.77393"}},
    {"3d", {3, 2, 1, 0.5, Quantity::I_r, "415.6163877"}},
    {"3d", {3, 2, 1, 1.0, Quantity::I_r, "103.62877"}},
    {"3d", {3, 2, 1, 2.5, Quantity::I_r, "16.469367"}},
    {"3d", {3, 2, 1, 5.0, Quantity::I_r, "4.0931882"}},
    {"3d", {3, 2, 1, 10.0, Quantity::I_r, "1.0451648"}},
    {"3d", {3, 2, 2, 0.1, Quantity::I_r, "7540.588647"}},
    {"3d", {3, 2, 2, 0.3, Quantity::I_r, "835.1551838"}},
    {"3d", {3, 2, 2, 0.5, Quantity::I_r, "299.6917637"}},
    {"3d", {3, 2, 2, 1.0, Quantity::I_r, "74.324598"}},
    {"3d", {3, 2, 2, 2.5, Quantity::I_r, "11.611677"}},
    {"3d", {3, 2, 2, 5.0, Quantity::I_r, "2.7943730"}},
    {"3d", {3, 2, 2, 10.0, Quantity::I_r, "0.6590879"}},
    {"3d", {3, 2, 0, 0.1, Quantity::I_p, "0.01752499"}},
    {"3d", {3, 2, 0, 0.3, Quantity::I_p, "0.15730840"}},
    {"3d", {3, 2, 0, 0.5, Quantity::I_p, "0.43580006"}},
    {"3d", {3, 2, 0, 1.0, Quantity::I_p, "1.73133439"}},
    {"3d", {3, 2, 0, 2.5, Quantity::I_p, "10.587743"}},
    {"3d", {3, 2, 0, 5.0, Quantity::I_p, "40.640796"}},
    {"3d", {3, 2, 0, 10.0, Quantity::I_p, "146.06896"}},
    {"3d", {3, 2, 1, 0.1, Quantity::I_p, "0.01331281"}},
    {"3d", {3, 2, 1, 0.3, Quantity::I_p, "0.1194437"}},
    {"3d", {3, 2, 1, 0.5, Quantity::I_p, "0.3307477"}},
    {"3d", {3, 2, 1, 1.0, Quantity::I_p, "1.312436"}},
    {"3d", {3, 2, 1, 2.5, Quantity::I_p, "7.99650"}},
    {"3d", {3, 2, 1, 5.0, Quantity::I_p, "30.48999"}},
    {"3d", {3, 2, 1, 10.0, Quantity::I_p, "107.87459"}},
    {"3d", {3, 2, 2, 0.1, Quantity::I_p, "0.00910063"}},
    {"3d", {3, 2, 2, 0.3, Quantity::I_p, "0.0815791"}},
    {"3d", {3, 2, 2, 0.5, Quantity::I_p, "0.225695"}},
    {"3d", {3, 2, 2, 1.0, Quantity::I_p, "0.89353"}},
    {"3d", {3, 2, 2, 2.5, Quantity::I_p, "5.40526"}},
    {"3d", {3, 2, 2, 5.0, Quantity::I_p, "20.33919"}},
    {"3d", {3, 2, 2, 10.0, Quantity::I_p, "69.6802"}},
    {"3d", {3, 2, 0, 0.1, Quantity::I_t, "232.85533"}},
    {"3d", {3, 2, 0, 0.3, Quantity::I_t, "232.248971"}},
    {"3d", {3, 2, 0, 0.5, Quantity::I_t, "231.6456047"}},
    {"3d", {3, 2, 0, 1.0, Quantity::I_t, "230.1513809"}},
    {"3d", {3, 2, 0, 2.5, Quantity::I_t, "225.805409"}},
    {"3d", {3, 2, 0, 5.0, Quantity::I_t, "219.1353081"}},
    {"3d", {3, 2, 0, 10.0, Quantity::I_t, "209.0599880"}},
    {"3d", {3, 2, 1, 0.1, Quantity::I_t, "137.63716"}},
    {"3d", {3, 2, 1, 0.3, Quantity::I_t, "138.049914"}},
    {"3d", {3, 2, 1, 0.5, Quantity::I_t, "137.4641643"}},
    {"3d", {3, 2, 1, 1.0, Quantity::I_t, "136.0061283"}},
    {"3d", {3, 2, 1, 2.5, Quantity::I_t, "131.697293"}},
    {"3d", {3, 2, 1, 5.0, Quantity::I_t, "124.8012672"}},
    {"3d", {3, 2, 1, 10.0, Quantity::I_t, "112.7467242"}},
    {"3d", {3, 2, 2, 0.1, Quantity::I_t, "67.624107"}},
    {"3d", {3, 2, 2, 0.3, Quantity::I_t, "68.1312082"}},
    {"3d", {3, 2, 2, 0.5, Quantity::I_t, "67.63893260"}},
    {"3d", {3, 2, 2, 1.0, Quantity::I_t, "66.41125805"}},
    {"3d", {3, 2, 2, 2.5, Quantity::I_t, "62.7641332"}},
    {"3d", {3, 2, 2, 5.0, Quantity::I_t, "56.83528337"}},
    {"3d", {3, 2, 2, 10.0, Quantity::I_t, "45.92537668"}},
    {"n10m1", {10, 1, 1, 0.1, Quantity::I_r, "337317.31464"}},
    {"n10m1", {10, 1, 1, 0.3, Quantity::I_r, "37474.481640"}},
    {"n10m1", {10, 1, 1, 0.5, Quantity::I_r, "13488.9415784"}},
    {"n10m1", {10, 1, 1, 1.0, Quantity::I_r, "3371.07344973"}},
    {"n10m1", {10, 1, 1, 2.5, Quantity::I_r, "538.824417709"}},
    {"n10m1", {10, 1, 1, 5.0, Quantity::I_r, "134.48580714"}},
    {"n10m1", {10, 1, 1, 10.0, Quantity::I_r, "33.51660547"}},
    {"n10m1", {10, 2, 1, 0.1, Quantity::I_r, "300596.10217"}},
    {"n10m1", {10, 2, 1, 0.3, Quantity::I_r, "33396.594443"}},
    {"n10m1", {10, 2, 1, 0.5, Quantity::I_r, "12021.7096534"}},
    {"n10m1", {10, 2, 1, 1.0, Quantity::I_r, "3004.7684353"}},
    {"n10m1", {10, 2, 1, 2.5, Quantity::I_r, "480.45505152"}},
    {"n10m1", {10, 2, 1, 5.0, Quantity::I_r, "119.99220841"}},
    {"n10m1", {10, 2, 1, 10.0, Quantity::I_r, "29.942974553"}},
    {"n10m1", {10, 3, 1, 0.1, Quantity::I_r, "265034.1043"}},
    {"n10m1", {10, 3, 1, 0.3, Quantity::I_r, "29446.2744769"}},
    {"n10m1", {10, 3, 1, 0.5, Quantity::I_r, "10599.9580236"}},
    {"n10m1", {10, 3, 1, 1.0, Quantity::I_r, "2649.5565064"}},
    {"n10m1", {10, 3, 1, 2.5, Quantity::I_r, "423.728010198"}},
    {"n10m1", {10, 3, 1, 5.0, Quantity::I_r, "105.8538366"}},
    {"n10m1", {10, 3, 1, 10.0, Quantity::I_r, "26.42943372"}},
    {"n10m1", {10, 4, 1, 0.1, Quantity::I_r, "230616.75756"}},
    {"n10m1", {10, 4, 1, 0.3, Quantity::I_r, "25622.70654224"}},
    {"n10m1", {10, 4, 1, 0.5, Quantity::I_r, "9223.6821098"}},
    {"n10m1", {10, 4, 1, 1.0, Quantity::I_r, "2305.6169240"}},
    {"n10m1", {10, 4, 1, 2.5, Quantity::I_r, "368.75853346"}},
    {"n10m1", {10, 4, 1, 5.0, Quantity::I_r, "92.13585342"}},
    {"n10m1", {10, 4, 1, 10.0, Quantity::I_r, "23.0113835"}},
    {"n10m1", {10, 5, 1, 0.1, Quantity::I_r, "197308.08284"}},
    {"n10m1", {10, 5, 1, 0.3, Quantity::I_r, "21922.12562"}},
    {"n10m1", {10, 5, 1, 0.5, Quantity::I_r, "7891.610144"}},
    {"n10m1", {10, 5, 1, 1.0, Quantity::I_r, "1972.6839051"}},
    {"n10m1", {10, 5, 1, 2.5, Quantity::I_r, "315.529017"}},
    {"n10m1", {10, 5, 1, 5.0, Quantity::I_r, "78.8442246"}},
    {"n10m1", {10, 5, 1, 10.0, Quantity::I_r, "19.6956519"}},
    {"n10m1", {10, 6, 1, 0.1, Quantity::I_r, "165034.41942"}},
    {"n10m1", {10, 6, 1, 0.3, Quantity::I_r, "18336.439361"}},
    {"n10m1", {10, 6, 1, 0.5, Quantity::I_r, "6600.861984"}},
    {"n10m1", {10, 6, 1, 1.0, Quantity::I_r, "1650.058034"}},
    {"n10m1", {10, 6, 1, 2.5, Quantity::I_r, "263.937368"}},
    {"n10m1", {10, 6, 1, 5.0, Quantity::I_r, "65.95746881"}},
    {"n10m1", {10, 6, 1, 10.0, Quantity::I_r, "16.478900"}},
    {"n10m1", {10, 7, 1, 0.1, Quantity::I_r, "133640.58787"}},
    {"n10m1", {10, 7, 1, 0.3, Quantity::I_r, "14848.450065"}},
    {"n10m1", {10, 7, 1, 0.5, Quantity::I_r, "5345.2624260"}},
    {"n10m1", {10, 7, 1, 1.0, Quantity::I_r, "1336.2054367"}},
    {"n10m1", {10, 7, 1, 2.5, Quantity::I_r, "213.7428638"}},
    {"n10m1", {10, 7, 1, 5.0, Quantity::I_r, "53.4173182"}},
    {"n10m1", {10, 7, 1, 10.0, Quantity::I_r, "13.34749576"}},
    {"n10m1", {10, 8, 1, 0.1, Quantity::I_r, "102757.598457"}},
    {"n10m1", {10, 8, 1, 0.3, Quantity::I_r, "11417.184564"}},
    {"n10m1", {10, 8, 1, 0.5, Quantity::I_r, "4110.0703296"}},
    {"n10m1", {10, 8, 1, 1.0, Quantity::I_r, "1027.4465296"}},
    {"n10m1", {10, 8, 1, 2.5, Quantity::I_r, "164.35944397"}},
    {"n10m1", {10, 8, 1, 5.0, Quantity::I_r, "41.07832028"}},
    {"n10m1", {10, 8, 1, 10.0, Quantity::I_r, "10.26556627"}},
    {"n10m1", {10, 9, 1, 0.1, Quantity::I_r, "71218.59722"}},
    {"n10m1", {10, 9, 1, 0.3, Quantity::I_r, "7913.0133040"}},
    {"n10m1", {10, 9, 1, 0.5, Quantity::I_r, "2848.6264996"}},
    {"n10m1", {10, 9, 1, 1.0, Quantity::I_r, "712.1210846"}},
    {"n10m1", {10, 9, 1, 2.5, Quantity::I_r, "113.92355287"}},
    {"n10m1", {10, 9, 1, 5.0, Quantity::I_r, "28.47535810"}},
    {"n10m1", {10, 9, 1, 10.0, Quantity::I_r, "7.11712852"}},
    {"n10m1", {10, 1, 1, 0.1, Quantity::I_p, "0.0132601"}},
    {"n10m1", {10, 1, 1, 0.3, Quantity::I_p, "0.119372"}},
    {"n10m1", {10, 1, 1, 0.5, Quantity::I_p, "0.33167"}},
    {"n10m1", {10, 1, 1, 1.0, Quantity::I_p, "1.32758"}},
    {"n10m1", {10, 1, 1, 2.5, Quantity::I_p, "8.3142"}},
    {"n10m1", {10, 1, 1, 5.0, Quantity::I_p, "33.374"}},
    {"n10m1", {10, 1, 1, 10.0, Quantity::I_p, "134.520"}},
    {"n10m1", {10, 2, 1, 0.1, Quantity::I_p, "0.013334381"}},
    {"n10m1", {10, 2, 1, 0.3, Quantity::I_p, "0.12002836"}},
    {"n10m1", {10, 2, 1, 0.5, Quantity::I_p, "0.3334650"}},
    {"n10m1", {10, 2, 1, 1.0, Quantity::I_p, "1.3343946"}},
    {"n10m1", {10, 2, 1, 2.5, Quantity::I_p, "8.350289"}},
    {"n10m1", {10, 2, 1, 5.0, Quantity::I_p, "33.47399"}},
    {"n10m1", {10, 2, 1, 10.0, Quantity::I_p, "134.53947"}},
    {"n10m1", {10, 3, 1, 0.1, Quantity::I_p, "0.01350503439"}},
    {"n10m1", {10, 3, 1, 0.3, Quantity::I_p, "0.1215547591"}},
    {"n10m1", {10, 3, 1, 0.5, Quantity::I_p, "0.337678596"}},
    {"n10m1", {10, 3, 1, 1.0, Quantity::I_p, "1.35098345"}},
    {"n10m1", {10, 3, 1, 2.5, Quantity::I_p, "8.44891802"}},
    {"n10m1", {10, 3, 1, 5.0, Quantity::I_p, "33.8338841"}},
    {"n10m1", {10, 3, 1, 10.0, Quantity::I_p, "135.688696"}},
    {"n10m1", {10, 4, 1, 0.1, Quantity::I_p, "0.013813106568"}},
    {"n10m1", {10, 4, 1, 0.3, Quantity::I_p, "0.124318744963"}},
    {"n10m1", {10, 4, 1, 0.5, Quantity::I_p, "0.34533221024"}},
    {"n10m1", {10, 4, 1, 1.0, Quantity::I_p, "1.3813556408"}},
    {"n10m1", {10, 4, 1, 2.5, Quantity::I_p, "8.634146939"}},
    {"n10m1", {10, 4, 1, 5.0, Quantity::I_p, "34.54342445"}},
    {"n10m1", {10, 4, 1, 10.0, Quantity::I_p, "138.265110370"}},
    {"n10m1", {10, 5, 1, 0.1, Quantity::I_p, "0.0143240903"}},
    {"n10m1", {10, 5, 1, 0.3, Quantity::I_p, "0.1289089301"}},
    {"n10m1", {10, 5, 1, 0.5, Quantity::I_p, "0.358058593"}},
    {"n10m1", {10, 5, 1, 1.0, Quantity::I_p, "1.432018965"}},
    {"n10m1", {10, 5, 1, 2.5, Quantity::I_p, "8.94620270"}},
    {"n10m1", {10, 5, 1, 5.0, Quantity::I_p, "35.76039607"}},
    {"n10m1", {10, 5, 1, 10.0, Quantity::I_p, "142.8731406"}},
    {"n10m1", {10, 6, 1, 0.1, Quantity::I_p, "0.0151493038"}},
    {"n10m1", {10, 6, 1, 0.3, Quantity::I_p, "0.136326672"}},
    {"n10m1", {10, 6, 1, 0.5, Quantity::I_p, "0.378637879"}},
    {"n10m1", {10, 6, 1, 1.0, Quantity::I_p, "1.51407965"}},
    {"n10m1", {10, 6, 1, 2.5, Quantity::I_p, "9.45422375"}},
    {"n10m1", {10, 6, 1, 5.0, Quantity::I_p, "37.7594223"}},
    {"n10m1", {10, 6, 1, 10.0, Quantity::I_p, "150.5945315"}},
    {"n10m1", {10, 7, 1, 0.1, Quantity::I_p, "0.01649686198"}},
    {"n10m1", {10, 7, 1, 0.3, Quantity::I_p, "0.148444746"}},
    {"n10m1", {10, 7, 1, 0.5, Quantity::I_p, "0.412271503"}},
    {"n10m1", {10, 7, 1, 1.0, Quantity::I_p, "1.648336126"}},
    {"n10m1", {10, 7, 1, 2.5, Quantity::I_p, "10.28805581"}},
    {"n10m1", {10, 7, 1, 5.0, Quantity::I_p, "41.05882556"}},
    {"n10m1", {10, 7, 1, 10.0, Quantity::I_p, "163.492606"}},
    {"n10m1", {10, 8, 1, 0.1, Quantity::I_p, "0.018820152"}},
    {"n10m1", {10, 8, 1, 0.3, Quantity::I_p, "0.1693440515"}},
    {"n10m1", {10, 8, 1, 0.5, Quantity::I_p, "0.470296419"}},
    {"n10m1", {10, 8, 1, 1.0, Quantity::I_p, "1.88014732"}},
    {"n10m1", {10, 8, 1, 2.5, Quantity::I_p, "11.7313926"}},
    {"n10m1", {10, 8, 1, 5.0, Quantity::I_p, "46.7946037"}},
    {"n10m1", {10, 8, 1, 10.0, Quantity::I_p, "186.119273"}},
    {"n10m1", {10, 9, 1, 0.1, Quantity::I_p, "0.02345226"}},
    {"n10m1", {10, 9, 1, 0.3, Quantity::I_p, "0.2110273"}},
    {"n10m1", {10, 9, 1, 0.5, Quantity::I_p, "0.5860667"}},
    {"n10m1", {10, 9, 1, 1.0, Quantity::I_p, "2.343062"}},
    {"n10m1", {10, 9, 1, 2.5, Quantity::I_p, "14.62137"}},
    {"n10m1", {10, 9, 1, 5.0, Quantity::I_p, "58.33161"}},
    {"n10m1", {10, 9, 1, 10.0, Quantity::I_p, "232.06115"}},
    {"2p", {2, 1, 0, 0.1, Quantity::lower_bound, "10.739845"}},
    {"2p", {2, 1, 0, 0.3, Quantity::lower_bound, "10.8009939"}},
    {"2p", {2, 1, 0, 0.5, Quantity::lower_bound, "10.8619563"}},
    {"2p", {2, 1, 0, 1.0, Quantity::lower_bound, "11.01311496"}},
    {"2p", {2, 1, 0, 2.5, Quantity::lower_bound, "11.4451714"}},
    {"2p", {2, 1, 0, 5.0, Quantity::lower_bound, "12.00006372"}},
    {"2p", {2, 1, 0, 10.0, Quantity::lower_bound, "11.8806003"}},
    {"3d", {3, 2, 0, 0.1, Quantity::lower_bound, "5.56568"}},
    {"3d", {3, 2, 0, 0.3, Quantity::lower_bound, "5.580218"}},
    {"3d", {3, 2, 0, 0.5, Quantity::lower_bound, "5.5947532"}},
    {"3d", {3, 2, 0, 1.0, Quantity::lower_bound, "5.6310763"}},
    {"3d", {3, 2, 0, 2.5, Quantity::lower_bound, "5.739455"}},
    {"3d", {3, 2, 0, 5.0, Quantity::lower_bound, "5.9141541"}},
    {"3d", {3, 2, 0, 10.0, Quantity::lower_bound, "6.1991776"}},
};

constexpr TablePreset kPresets[] = {
    {"2p", "2p, |m| = 0, 1", true},
    {"3d", "3d, |m| = 0, 1, 2", true},
    {"4f", "4f, |m| = 0..3", false},
    {"5g", "5g, |m| = 0..4", false},
    {"n10m1", "n = 10, |m| = 1, l = 1..9", true},
};

} // namespace

std::string_view quantity_name(Quantity q) {
  switch (q) {
  case Quantity::I_r:
    return "I_r";
  case Quantity::I_p:
    return "I_p";
  case Quantity::I_t:
    return "I_t";
  case Quantity::lower_bound:
    return "lower_bound";
  }
  return "?";
}

PrintedValue parse_printed(std::string_view printed) {
  PrintedValue out;
  const auto *end = printed.data() + printed.size();
  const auto [ptr, ec] = std::from_chars(printed.data(), end, out.value, std::chars_format::fixed);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidArgument("parse_printed: not a plain decimal: '" + std::string(printed) + "'");
  }
  const auto dot = printed.find('.');
  out.decimals = dot == std::string_view::npos ? 0 : static_cast<int>(printed.size() - dot - 1);
  bool leading = true;
  for (char c : printed) {
    if (c < '0' || c > '9') {
      continue;
    }
    if (leading && c == '0') {
      continue;
    }
    leading = false;
    ++out.significant_digits;
  }
  out.tolerance = out.significant_digits >= 10 ? 1e-6 * std::abs(out.value)
                                               : 0.5 * std::pow(10.0, -out.decimals);
  return out;
}

std::span<const TablePreset> table_presets() { return kPresets; }

std::optional<TablePreset> find_preset(std::string_view name) {
  for (const auto &p : kPresets) {
    if (p.name == name) {
      return p;
    }
  }
  return std::nullopt;
}

std::vector<QuantumState> preset_states(std::string_view name) {
  const auto preset = find_preset(name);
  if (!preset) {
    throw InvalidArgument("unknown table preset '" + std::string(name) + "'");
  }
  std::vector<QuantumState> states;
  if (name == "n10m1") {
    for (int l = 1; l <= 9; ++l) {
      states.push_back({10, l, 1, 1.0, 1.0});
    }
    return states;
  }
  // Nodeless states: n = l + 1, every |m|.
  const int l = name == "2p" ? 1 : name == "3d" ? 2 : name == "4f" ? 3 : 4;
  for (int m = 0; m <= l; ++m) {
    states.push_back({l + 1, l, m, 1.0, 1.0});
  }
  return states;
}

std::vector<ReferenceCell> reference_cells(std::string_view name) {
  std::vector<ReferenceCell> out;
  for (const auto &c : kCells) {
    if (c.preset == name) {
      out.push_back(c.cell);
    }
  }
  return out;
}

std::optional<ReferenceCell> find_reference(std::string_view name, int n, int l, int m, double r_c,
                                            Quantity q) {
  for (const auto &c : kCells) {
    const ReferenceCell &r = c.cell;
    if (c.preset == name && r.n == n && r.l == l && r.quantity == q && r.r_c == r_c &&
        (q == Quantity::lower_bound || r.m == std::abs(m))) {
      return r;
    }
  }
  return std::nullopt;
}

} // namespace cha
