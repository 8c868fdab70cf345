package headfirst.adapter;

public interface MediaPlayer {
    void play(String fileName);
}
