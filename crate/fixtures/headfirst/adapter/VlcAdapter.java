package headfirst.adapter;

public class VlcAdapter implements MediaPlayer {
    private final VlcPlayer vlc;

    public VlcAdapter(VlcPlayer vlc) {
        this.vlc = vlc;
    }

    @Override
    public void play(String fileName) {
        vlc.playVlc(fileName);
    }
}
