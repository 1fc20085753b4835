// Generated by tests/oracles/gen_oracles.py (mpmath, 40 digits). Do not edit.
#pragma once

namespace oracle {

struct Moment {
    double kappa, lambda, ssw, touch, nontouch, wtd;
};
inline constexpr Moment kMoments[] = {
    {4.5000000000000000000, -0.050000000000000000000, 1.7380407958079287579, 0.25964145811024795782, 1.4783993376976808001, 0.85061256402238041126},
    {4.5000000000000000000, 0.0, 1.0000000000000000000, 0.21421787808835135014, 0.78578212191164864986, 0.78578212191164864986},
    {4.5000000000000000000, 0.20000000000000000000, 0.29100454617349944414, 0.11180259604700077919, 0.17920195012649866495, 0.61580464114006281543},
    {4.5000000000000000000, 1.0000000000000000000, 0.028911597443901394974, 0.018734919600542899359, 0.010176677843358495615, 0.35199292820484263681},
    {4.5000000000000000000, 3.0000000000000000000, 0.0013389746347079057601, 0.0011202185074940245911, 0.00021875612721388116891, 0.16337585607930677149},
    {5.0000000000000000000, -0.050000000000000000000, 1.7435334639646132229, 0.44461671990152342776, 1.2989167440630897951, 0.74499100298854523489},
    {5.0000000000000000000, 0.0, 1.0000000000000000000, 0.35796047807979385199, 0.64203952192020614801, 0.64203952192020614801},
    {5.0000000000000000000, 0.20000000000000000000, 0.29626170408061705228, 0.17600569627241835156, 0.12025600780819870072, 0.40591141599413510048},
    {5.0000000000000000000, 1.0000000000000000000, 0.031967781344470156856, 0.027485747469451393734, 0.0044820338750187631218, 0.14020472133246973797},
    {5.0000000000000000000, 3.0000000000000000000, 0.0017071409684454677098, 0.0016516917242763402215, 0.000055449244169127488238, 0.032480764737091328687},
    {5.3333333333333333333, -0.050000000000000000000, 1.7909987836422573400, 0.53554040787769877013, 1.2554583757645585699, 0.70098226041862562667},
    {5.3333333333333333333, 0.0, 1.0000000000000000000, 0.42264973081037423549, 0.57735026918962576451, 0.57735026918962576451},
    {5.3333333333333333333, 0.20000000000000000000, 0.29224014131984660010, 0.19903454688038567901, 0.093205594439460921084, 0.31893494856153474869},
    {5.3333333333333333333, 1.0000000000000000000, 0.032692861730881070549, 0.030056244509025245279, 0.0026366172218558252698, 0.080648101214257593319},
    {5.3333333333333333333, 3.0000000000000000000, 0.0018897499662210461307, 0.0018668271918290588266, 0.000022922774391987304071, 0.012130056780911725099},
    {6.0000000000000000000, -0.050000000000000000000, 2.0516579714516840662, 0.67230927929832955620, 1.3793486921533545100, 0.67230927929832955620},
    {6.0000000000000000000, 0.0, 1.0000000000000000000, 0.50000000000000000000, 0.50000000000000000000, 0.50000000000000000000},
    {6.0000000000000000000, 0.20000000000000000000, 0.26723493092106662858, 0.21088033828647051763, 0.056354592634596110945, 0.21088033828647051763},
    {6.0000000000000000000, 1.0000000000000000000, 0.030988997311672109352, 0.030057544156607532798, 0.00093145315506457655329, 0.030057544156607532798},
    {6.0000000000000000000, 3.0000000000000000000, 0.0020389742443349707034, 0.0020348252879810558409, 4.1489563539148624776e-6, 0.0020348252879810558409},
    {7.0000000000000000000, -0.050000000000000000000, 7.6422535622906884165, 0.94897681242560489152, 6.6932767498650835250, 0.87582500309749488808},
    {7.0000000000000000000, 0.0, 1.0000000000000000000, 0.53291487121513899424, 0.46708512878486100576, 0.46708512878486100576},
    {7.0000000000000000000, 0.20000000000000000000, 0.18093103678429073949, 0.16002433719294353653, 0.020906699591347202956, 0.11555065379010981425},
    {7.0000000000000000000, 1.0000000000000000000, 0.020475606676913597822, 0.020316420311524085236, 0.00015918636538951258517, 0.0077744395026398129751},
    {7.0000000000000000000, 3.0000000000000000000, 0.0015511813100469679151, 0.0015508809549624486735, 3.0035508451924167361e-7, 0.00019362990165872181688},
    {7.5000000000000000000, 0.0, 1.0000000000000000000, 0.52379562301435064659, 0.47620437698564935341, 0.47620437698564935341},
    {7.5000000000000000000, 0.20000000000000000000, 0.10686369131738021156, 0.099553823455280509130, 0.0073098678620997024258, 0.068403662385100787758},
    {7.5000000000000000000, 1.0000000000000000000, 0.011530995564141626423, 0.011493513976157953602, 0.000037481587983672820830, 0.0032505075364204227418},
    {7.5000000000000000000, 3.0000000000000000000, 0.00092066018007166887795, 0.00092060872149440771583, 5.1458577261162111732e-8, 0.000055893127969492841502},
    {7.9000000000000000000, 0.0, 1.0000000000000000000, 0.50594502319105573156, 0.49405497680894426844, 0.49405497680894426844},
    {7.9000000000000000000, 0.20000000000000000000, 0.024742068238979390828, 0.024327786221730154481, 0.00041428201724923634609, 0.016744033410940324049},
    {7.9000000000000000000, 1.0000000000000000000, 0.0025195517536494321453, 0.0025180457712590661356, 1.5059823903660097611e-6, 0.00059771837914608306592},
    {7.9000000000000000000, 3.0000000000000000000, 0.00020834530455479071916, 0.00020834358702371008266, 1.7175310806364996737e-9, 8.2436754901036071351e-6}};

struct Prob {
    double kappa, p_touch;
};
inline constexpr Prob kTouch[] = {
    {4.2000000000000000000, 0.094561876890987729312},
    {5.0000000000000000000, 0.35796047807979385199},
    {5.3333333333333333333, 0.42264973081037423549},
    {6.0000000000000000000, 0.50000000000000000000},
    {7.0000000000000000000, 0.53291487121513899424},
    {7.8000000000000000000, 0.51128861198172148105}};

inline constexpr double kKappa0 = 6.9506111457588086646;

struct Root {
    double kappa, a, np, nl;
};
inline constexpr Root kRoots[] = {
    {4.5000000000000000000, 0.30000000000000000000, 0.37395544346205204130, 0.087166199499959586024},
    {4.5000000000000000000, 0.70000000000000000000, 0.25463336550765121110, 0.034516745304207984304},
    {4.5000000000000000000, 1.0000000000000000000, 0.13368055555555555556, 1.4699424726501834280e-48},
    {4.5000000000000000000, 1.5000000000000000000, -0.12646326761170521403, -0.050747899362087858038},
    {4.5000000000000000000, 3.0000000000000000000, -1.1067332606607965598, -0.17097752611700177036},
    {5.3333333333333333333, 0.30000000000000000000, 0.26488782783734629839, 0.082725896882856675012},
    {5.3333333333333333333, 0.70000000000000000000, 0.18203765555369742025, 0.033229217119853444271},
    {5.3333333333333333333, 1.0000000000000000000, 0.12500000000000000000, -6.3487374834444698291e-49},
    {5.3333333333333333333, 1.5000000000000000000, 0.037720222371880276555, -0.049780011342453458637},
    {5.3333333333333333333, 3.0000000000000000000, -0.18244119693150812345, -0.17111249632869819612},
    {6.0000000000000000000, 0.30000000000000000000, 0.19924645373287090568, 0.069943913918673149197},
    {6.0000000000000000000, 0.70000000000000000000, 0.14183496857432846394, 0.028518827776848710123},
    {6.0000000000000000000, 1.0000000000000000000, 0.10416666666666666667, -1.8421556414682486476e-48},
    {6.0000000000000000000, 1.5000000000000000000, 0.048695513093202850570, -0.043639888814059861723},
    {6.0000000000000000000, 3.0000000000000000000, -0.083333333333333333333, -0.15372059846575406172},
    {7.0000000000000000000, 0.30000000000000000000, 0.10260695575942584516, 0.039824516021601905286},
    {7.0000000000000000000, 0.70000000000000000000, 0.076041096394786784762, 0.016643239790422097841},
    {7.0000000000000000000, 1.0000000000000000000, 0.058035714285714285714, -8.2155308554805842751e-48},
    {7.0000000000000000000, 1.5000000000000000000, 0.030854354549297541385, -0.026480962784606861922},
    {7.0000000000000000000, 3.0000000000000000000, -0.036173373401472393102, -0.098178583558870749000},
    {7.5000000000000000000, 0.30000000000000000000, 0.052209284046730066919, 0.020942362741233069062},
    {7.5000000000000000000, 0.70000000000000000000, 0.039325337393719784167, 0.0088632256008285449379},
    {7.5000000000000000000, 1.0000000000000000000, 0.030208333333333333333, 3.1005932501564559380e-48},
    {7.5000000000000000000, 1.5000000000000000000, 0.015906148415317080886, -0.014420317470222403466},
    {7.5000000000000000000, 3.0000000000000000000, -0.021771491371928652367, -0.055312122228522308543}};

struct Levy {
    double kappa, p, l1, l2, closed;
};
inline constexpr Levy kLevy[] = {
    {6.0000000000000000000, -0.30000000000000000000, 1.0000000000000000000, 1.0000000000000000000, 0.55377908650872954485},
    {6.0000000000000000000, -0.20000000000000000000, 1.0000000000000000000, 2.0000000000000000000, 0.22061921816316804324},
    {5.3333333333333333333, -0.40000000000000000000, 2.0000000000000000000, 1.0000000000000000000, 0.71510560644717438928},
    {7.0000000000000000000, -0.25000000000000000000, 0.50000000000000000000, 1.5000000000000000000, 0.17174774093453311572},
    {4.5000000000000000000, -0.10000000000000000000, 3.0000000000000000000, 1.0000000000000000000, 0.86341625680338867901}};

struct Scale {
    double kappa, psi0, delta, upper;
};
inline constexpr Scale kScale[] = {
    {6.0000000000000000000, 2.0943951023931954923, 0.000010000000000000000000, 0.42475809735959673151},
    {7.5000000000000000000, 2.0943951023931954923, 0.000010000000000000000000, 0.46969684158845539095},
    {4.5000000000000000000, 2.0943951023931954923, 0.000010000000000000000000, 0.35907969697042547425},
    {6.0000000000000000000, 4.0000000000000000000, 0.000010000000000000000000, 0.56102003269902693261},
    {5.3333333333333333333, 1.0000000000000000000, 0.000010000000000000000000, 0.27042025551090578251}};

// Mean exit time of the angular gap from (1e-5, 2 pi - 1e-5), Green's function quadrature.
inline constexpr double kMeanExitKappa6 = 4.1032887140787428293;

}  // namespace oracle
